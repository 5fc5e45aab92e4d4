#pragma once

#include <Eigen/Dense>
#include <span>

#include "pfc/plant.hpp"

namespace pfc {

/// Parameter vector theta = [E sin(rho), E cos(rho)]^T identified by the
/// estimator. ||theta|| recovers E and atan2(theta1, theta2) recovers rho.
struct ThetaVector {
    double theta1 = 0.0;  ///< E sin(rho) [V]
    double theta2 = 0.0;  ///< E cos(rho) [V]

    Eigen::Vector2d vec() const { return {theta1, theta2}; }
};

struct EstimatorGains {
    double k = 0.0;          ///< scalar adaptation gain
    Eigen::Matrix2d Gamma;   ///< symmetric positive definite
    Eigen::Matrix2d D;       ///< symmetric positive definite

    /// Throws std::invalid_argument unless k > 0 and both matrices are
    /// symmetric positive definite (leading principal minors).
    void validate() const;

    static EstimatorGains defaults();
};

/// Fifth-dimensional estimator state.
struct EstimatorState {
    double zeta1 = 0.0;
    Eigen::Vector2d zeta2 = Eigen::Vector2d::Zero();
    Eigen::Vector2d mu = Eigen::Vector2d::Zero();
};

/// Readouts reconstructed from the estimator state.
struct EstimateBundle {
    double i_hat = 0.0;                       ///< input current estimate [A]
    ThetaVector theta_hat;                    ///< parameter estimate [V]
    double rho_hat = 0.0;                     ///< phase estimate, (-pi, pi]
    double E_hat = 0.0;                       ///< amplitude estimate [V]
    bool phase_indeterminate = false;         ///< theta_hat == 0, rho_hat meaningless
};

/// Regressor phi(t) = (1/L) [cos(w t), sin(w t)]^T, so v_in = L phi^T theta.
Eigen::Vector2d regressor(double t, const PlantParams& params);

/// Time derivative of the estimator state driven by (u, du/dt, v).
/// Throws std::domain_error on non-finite inputs.
EstimatorState estimator_derivative(const EstimatorState& s, double u, double u_dot,
                                    double v, double t, const PlantParams& params,
                                    const EstimatorGains& gains);

/// Current/parameter estimates for the given state and measurements.
EstimateBundle estimates(const EstimatorState& s, double u, double v,
                         const PlantParams& params, const EstimatorGains& gains);

/// Right side of the estimation-error dynamics
///   d(eta_bar)/dt = -k (u/C)^2 [ 1, -mu^T D; Gamma D mu, Gamma D mu mu^T ] eta_bar.
/// Test oracle for the closed loop; not used by the estimator itself.
Eigen::Vector3d error_dynamics_rhs(const Eigen::Vector3d& eta_bar, double u,
                                   const Eigen::Vector2d& mu,
                                   const PlantParams& params,
                                   const EstimatorGains& gains);

/// V(eta_bar) = (1/2) (eta_bar_1^2 + theta_bar^T Gamma^{-1} theta_bar).
double lyapunov_value(const Eigen::Vector3d& eta_bar, const EstimatorGains& gains);

struct PeResult {
    bool persistently_exciting = false;
    double min_energy = 0.0;       ///< min over windows of integral of u^2
    double min_eigenvalue = 0.0;   ///< min over windows of lambda_min of integral of u^2 phi phi^T
};

/// Sliding-window excitation check over a uniformly sampled control signal.
/// Throws std::invalid_argument when the trace is shorter than one window.
PeResult pe_check(std::span<const double> t, std::span<const double> u,
                  double window, const PlantParams& params, double floor = 1e-9);

}  // namespace pfc
