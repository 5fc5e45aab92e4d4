#pragma once

#include <Eigen/Dense>

#include "pfc/estimator.hpp"
#include "pfc/plant.hpp"

namespace pfc {

struct ControllerGains {
    double a = 0.0;  ///< filter numerator coefficient [1/s]
    double b = 0.0;  ///< filter numerator coefficient [1/s^2]
    double c = 0.0;  ///< filter gain, measured-feedback law
    double d = 0.0;  ///< filter gain, certainty-equivalent law (c/E convention)
    double k = 0.0;  ///< current-tracking gain

    void validate() const;
    static ControllerGains defaults();
};

struct ControllerState {
    double u = 0.0;                                 ///< control input, [-1, 1]
    Eigen::Vector2d x = Eigen::Vector2d::Zero();    ///< resonant filter state
};

struct ReferenceSpec {
    double V_d = 0.0;  ///< desired output voltage [V], must exceed E
};

/// Control input floor below which du/dt is frozen (output voltage near zero
/// makes the law singular).
inline constexpr double kVoltageFloor = 1.0;

struct DesiredCurrent {
    double i_d = 0.0;     ///< reference current [A]
    double di_dt = 0.0;   ///< its time derivative [A/s]
};

/// i_d = I0 sin(w t + rho) with I0 = 2 G V_d^2 / E.
DesiredCurrent desired_current(double t, const PlantParams& params, double V_d);

/// Tracking error of the measured-feedback law:
///   e = v_in - L di_d/dt - k (i_d - i) - u v.
double im_error(double i, double v, double u, double t, const PlantParams& params,
                const ControllerGains& gains, double V_d);

struct FilterStep {
    Eigen::Vector2d dx = Eigen::Vector2d::Zero();  ///< filter state derivative
    double w = 0.0;                                ///< filter output
};

/// State-space step of the resonant filter gain*(s^2 + a s + b)/(s^2 + w^2):
///   dx1 = x2, dx2 = -w^2 x1 + e_in, w_out = gain*((b - w^2) x1 + a x2 + e_in).
FilterStep resonant_filter_step(const Eigen::Vector2d& x, double e_in, double gain,
                                const ControllerGains& gains, double omega);

struct ControlDerivative {
    double du_dt = 0.0;
    bool v_floored = false;  ///< voltage floor guard fired, du/dt held at 0
};

/// du/dt = (1/v) (-(u^2/C) i + w). Uses the measured current.
ControlDerivative im_control_derivative(const ControllerState& ctrl, double i,
                                        double v, double w,
                                        const PlantParams& params);

/// Estimate of the scaled error E*e built from the estimator outputs only:
///   e_hat = q_hat cos(w t + rho_hat - phi_hat) - E_hat (u v - k i_hat).
double ce_error(const EstimateBundle& est, double v, double u, double t,
                const PlantParams& params, const ControllerGains& gains, double V_d);

/// du/dt = (1/v) (-(u^2/C) i_hat + w_hat). Certainty-equivalent law.
ControlDerivative ce_control_derivative(const ControllerState& ctrl,
                                        const EstimateBundle& est, double v,
                                        double w_hat, const PlantParams& params);

}  // namespace pfc
