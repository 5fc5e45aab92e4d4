#include "pfc/steady_state.hpp"

#include <cmath>
#include <stdexcept>

namespace pfc {

DCoefficients d_coefficients(double delta_rho, double I_s, const PlantParams& params) {
    const double lw = params.L * params.omega;
    return {
        0.5 * I_s * (params.E * std::cos(delta_rho) - lw * I_s * std::sin(2.0 * delta_rho)),
        0.5 * I_s * (params.E * std::sin(delta_rho) + lw * I_s * std::cos(2.0 * delta_rho)),
    };
}

HarmonicDescriptor harmonic_descriptor(double delta_rho, double I_s,
                                       const PlantParams& params) {
    const auto [d1, d2] = d_coefficients(delta_rho, I_s, params);
    const double denom = params.G * params.G +
                         params.C * params.C * params.omega * params.omega;
    const double cw = params.C * params.omega;
    // The closed form carries the two harmonic coefficients with negative
    // sign, so the phase comes from the negated pair; the principal-value
    // arctangent of the bare fraction lands a half-turn off and breaks the
    // three-term/compact-form identity.
    const double alpha = (params.G * d1 - cw * d2) / denom;
    const double beta = (params.G * d2 + cw * d1) / denom;
    return {
        std::sqrt((d1 * d1 + d2 * d2) / denom),
        std::atan2(-alpha, -beta),
    };
}

double vs_squared(double t, double delta_rho, double I_s, const PlantParams& params) {
    const auto h = harmonic_descriptor(delta_rho, I_s, params);
    const double dc = params.E * I_s / (2.0 * params.G) * std::cos(delta_rho);
    return dc + h.amplitude *
                    std::sin(2.0 * params.omega * t + 2.0 * params.rho + h.phase);
}

double dc_component(double delta_rho, double I_s, const PlantParams& params) {
    const double c = std::cos(delta_rho);
    if (!(c > 0.0))
        throw std::domain_error("dc_component: cos(delta_rho) must be positive");
    return std::sqrt(params.E * I_s * c / (2.0 * params.G));
}

double required_current(double delta_rho, const PlantParams& params, double V_d) {
    const double c = std::cos(delta_rho);
    if (!(c > 0.0))
        throw std::domain_error("required_current: cos(delta_rho) must be positive");
    if (!(V_d > 0.0)) throw std::domain_error("required_current: V_d must be > 0");
    return 2.0 * params.G * V_d * V_d / (params.E * c);
}

double minimum_current(const PlantParams& params, double V_d) {
    return required_current(0.0, params, V_d);
}

PhaseShiftAnalysis analyze_phase_shift(double delta_rho, double I_s,
                                       const PlantParams& params) {
    PhaseShiftAnalysis out;
    out.delta_rho = delta_rho;
    out.I_s = I_s;
    const auto d = d_coefficients(delta_rho, I_s, params);
    out.d1 = d.d1;
    out.d2 = d.d2;
    const auto h = harmonic_descriptor(delta_rho, I_s, params);
    out.A = h.amplitude;
    out.eps = h.phase;
    out.V_s = dc_component(delta_rho, I_s, params);
    return out;
}

StaticLawSteadyState static_law_steady_state(double K, const PlantParams& params,
                                             double V_d) {
    if (!(K > 0.0)) throw std::invalid_argument("static_law: K must be > 0");
    StaticLawSteadyState out;
    out.hbar = params.L * params.omega / (K * params.E);
    const double scale = std::sqrt(1.0 + out.hbar * out.hbar);
    out.amplitude = minimum_current(params, V_d) / scale;
    out.phase_lag = std::atan(out.hbar);
    out.V_s = V_d / scale;
    return out;
}

bool lagging_benefit(double delta_rho, const PlantParams& params, double I0) {
    const double s = std::sin(delta_rho);
    const double c = std::cos(delta_rho);
    const double lw = params.L * params.omega;
    const double lhs = s * s / (params.E * lw * I0);
    const double rhs =
        std::sin(2.0 * delta_rho) * (2.0 * c - std::cos(2.0 * delta_rho)) /
        (params.E * params.E * c * c + lw * lw * I0 * I0 * (1.0 + c * c));
    return lhs < rhs;
}

RatioGrid ratio_sweep(std::span<const double> delta_rho_grid,
                      std::span<const double> E_grid, const PlantParams& params,
                      double V_d) {
    if (delta_rho_grid.empty() || E_grid.empty())
        throw std::invalid_argument("ratio_sweep: empty grid");

    RatioGrid grid;
    grid.delta_rho.assign(delta_rho_grid.begin(), delta_rho_grid.end());
    grid.E.assign(E_grid.begin(), E_grid.end());
    grid.ratio.resize(grid.delta_rho.size() * grid.E.size());

    for (std::size_t j = 0; j < grid.E.size(); ++j) {
        PlantParams p = params;
        p.E = grid.E[j];
        const double base =
            harmonic_descriptor(0.0, required_current(0.0, p, V_d), p).amplitude;
        for (std::size_t i = 0; i < grid.delta_rho.size(); ++i) {
            const double dr = grid.delta_rho[i];
            const double I_s = required_current(dr, p, V_d);
            grid.ratio[i * grid.E.size() + j] =
                harmonic_descriptor(dr, I_s, p).amplitude / base;
        }
    }
    return grid;
}

}  // namespace pfc
