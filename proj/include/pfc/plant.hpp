#pragma once

#include <optional>

namespace pfc {

/// Electrical constants of the converter and its AC source.
struct PlantParams {
    double L = 0.0;      ///< inductance [H]
    double C = 0.0;      ///< capacitance [F]
    double G = 0.0;      ///< load conductance [S]
    double r = 0.0;      ///< AC-source series resistance [ohm]
    double E = 0.0;      ///< source amplitude [V]
    double omega = 0.0;  ///< source angular frequency [rad/s]
    double rho = 0.0;    ///< source phase [rad]
    std::optional<double> i_limit;  ///< instantaneous current clamp magnitude [A]

    /// Throws std::invalid_argument on a non-physical parameter set.
    void validate() const;
};

/// Averaged state of the converter.
struct PlantState {
    double i = 0.0;  ///< inductor current [A]
    double v = 0.0;  ///< capacitor voltage [V]
};

/// AC source voltage E*sin(omega*t + rho).
double input_voltage(double t, const PlantParams& params);

/// Averaged dynamics:
///   di/dt = (-u*v + v_in(t) - r*i) / L
///   dv/dt = ( u*i - G*v) / C
/// Throws std::domain_error on non-finite state or control, or |u| > 1.
PlantState plant_derivative(const PlantState& state, double u, double t,
                            const PlantParams& params);

/// Clamps the inductor current to [-i_limit, +i_limit]; voltage untouched.
/// No-op when the limit is not configured.
PlantState apply_current_limit(const PlantState& state, const PlantParams& params);

}  // namespace pfc
