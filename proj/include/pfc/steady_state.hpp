#pragma once

#include <span>
#include <vector>

#include "pfc/plant.hpp"

namespace pfc {

/// Closed-form steady-state description of the output for a given phase
/// difference delta_rho between input voltage and current.
struct PhaseShiftAnalysis {
    double delta_rho = 0.0;  ///< phase difference [rad], in (-pi/2, pi/2)
    double I_s = 0.0;        ///< input current amplitude [A]
    double d1 = 0.0;         ///< harmonic coefficient [V*A]
    double d2 = 0.0;         ///< harmonic coefficient [V*A]
    double A = 0.0;          ///< second-harmonic amplitude of v^2 [V^2]
    double eps = 0.0;        ///< second-harmonic phase [rad]
    double V_s = 0.0;        ///< DC component of the output [V]
};

struct DCoefficients {
    double d1 = 0.0;
    double d2 = 0.0;
};

/// d1 = (I_s/2)*(E*cos(dr) - L*omega*I_s*sin(2 dr))
/// d2 = (I_s/2)*(E*sin(dr) + L*omega*I_s*cos(2 dr))
DCoefficients d_coefficients(double delta_rho, double I_s, const PlantParams& params);

struct HarmonicDescriptor {
    double amplitude = 0.0;  ///< A [V^2]
    double phase = 0.0;      ///< eps [rad]
};

/// Amplitude and phase of the second harmonic of v^2 in steady state:
///   v_s^2(t) = (E*I_s / 2G) cos(dr) + A sin(2 w t + 2 rho + eps).
HarmonicDescriptor harmonic_descriptor(double delta_rho, double I_s,
                                       const PlantParams& params);

/// v_s^2 evaluated at time t from the compact closed form above.
double vs_squared(double t, double delta_rho, double I_s, const PlantParams& params);

/// DC component sqrt(E*I_s*cos(dr) / 2G). Throws std::domain_error when
/// cos(delta_rho) <= 0.
double dc_component(double delta_rho, double I_s, const PlantParams& params);

/// Current amplitude 2*G*V_d^2 / (E cos(dr)) required to hold the output DC
/// component at V_d. Throws std::domain_error when cos(delta_rho) <= 0.
double required_current(double delta_rho, const PlantParams& params, double V_d);

/// Minimum of required_current over delta_rho, reached at zero phase shift.
double minimum_current(const PlantParams& params, double V_d);

/// Full analysis bundle for one (delta_rho, I_s) point.
PhaseShiftAnalysis analyze_phase_shift(double delta_rho, double I_s,
                                       const PlantParams& params);

/// Steady state reached under the static control law with gain K:
/// the current lags by arctan(hbar) with hbar = L*omega/(K*E), its amplitude
/// shrinks by 1/sqrt(1+hbar^2), and the DC output settles below the target.
struct StaticLawSteadyState {
    double hbar = 0.0;       ///< L*omega / (K*E)
    double amplitude = 0.0;  ///< I0 / sqrt(1 + hbar^2) [A]
    double phase_lag = 0.0;  ///< arctan(hbar) [rad]
    double V_s = 0.0;        ///< V_d / sqrt(1 + hbar^2) [V]
};

StaticLawSteadyState static_law_steady_state(double K, const PlantParams& params,
                                             double V_d);

/// True when a lagging shift delta_rho strictly reduces the second-harmonic
/// amplitude relative to zero shift (closed-form inequality in I0).
bool lagging_benefit(double delta_rho, const PlantParams& params, double I0);

/// Ratio table A(delta_rho, E) / A(0, E) over a rectangular grid. At every
/// cell the current amplitude is the one that holds the output at V_d for
/// that (delta_rho, E), i.e. required_current(delta_rho) evaluated at E.
struct RatioGrid {
    std::vector<double> delta_rho;  ///< grid axis [rad]
    std::vector<double> E;          ///< grid axis [V]
    std::vector<double> ratio;      ///< row-major: ratio[i*E.size()+j]

    double at(std::size_t i_delta, std::size_t j_E) const {
        return ratio[i_delta * E.size() + j_E];
    }
};

RatioGrid ratio_sweep(std::span<const double> delta_rho_grid,
                      std::span<const double> E_grid, const PlantParams& params,
                      double V_d);

}  // namespace pfc
