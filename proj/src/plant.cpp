#include "pfc/plant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pfc {

void PlantParams::validate() const {
    if (!(L > 0.0)) throw std::invalid_argument("plant: L must be > 0");
    if (!(C > 0.0)) throw std::invalid_argument("plant: C must be > 0");
    if (!(G > 0.0)) throw std::invalid_argument("plant: G must be > 0");
    if (!(omega > 0.0)) throw std::invalid_argument("plant: omega must be > 0");
    if (!(E > 0.0)) throw std::invalid_argument("plant: E must be > 0");
    if (!(r >= 0.0)) throw std::invalid_argument("plant: r must be >= 0");
    if (!std::isfinite(rho)) throw std::invalid_argument("plant: rho must be finite");
    if (i_limit && !(*i_limit > 0.0))
        throw std::invalid_argument("plant: i_limit must be > 0 when set");
}

double input_voltage(double t, const PlantParams& params) {
    return params.E * std::sin(params.omega * t + params.rho);
}

PlantState plant_derivative(const PlantState& state, double u, double t,
                            const PlantParams& params) {
    if (!std::isfinite(state.i) || !std::isfinite(state.v) || !std::isfinite(u))
        throw std::domain_error("plant_derivative: non-finite input");
    if (std::abs(u) > 1.0 + 1e-12)
        throw std::domain_error("plant_derivative: |u| exceeds 1");

    const double v_in = input_voltage(t, params);
    return {
        (-u * state.v + v_in - params.r * state.i) / params.L,
        (u * state.i - params.G * state.v) / params.C,
    };
}

PlantState apply_current_limit(const PlantState& state, const PlantParams& params) {
    if (!params.i_limit) return state;
    const double lim = *params.i_limit;
    return {std::clamp(state.i, -lim, lim), state.v};
}

}  // namespace pfc
