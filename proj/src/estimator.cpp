#include "pfc/estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace pfc {

namespace {

void require_spd(const Eigen::Matrix2d& m, const char* name) {
    if (std::abs(m(0, 1) - m(1, 0)) > 1e-12 * (1.0 + std::abs(m(0, 1))))
        throw std::invalid_argument(std::string("estimator: ") + name +
                                    " must be symmetric");
    if (!(m(0, 0) > 0.0) || !(m.determinant() > 0.0))
        throw std::invalid_argument(std::string("estimator: ") + name +
                                    " must be positive definite");
}

}  // namespace

void EstimatorGains::validate() const {
    if (!(k > 0.0)) throw std::invalid_argument("estimator: k must be > 0");
    require_spd(Gamma, "Gamma");
    require_spd(D, "D");
}

EstimatorGains EstimatorGains::defaults() {
    EstimatorGains g;
    g.k = 2e-4;
    g.Gamma = 10.0 * Eigen::Matrix2d::Identity();
    g.D = 20.0 * Eigen::Matrix2d::Identity();
    return g;
}

Eigen::Vector2d regressor(double t, const PlantParams& params) {
    const double wt = params.omega * t;
    return Eigen::Vector2d{std::cos(wt), std::sin(wt)} / params.L;
}

EstimatorState estimator_derivative(const EstimatorState& s, double u, double u_dot,
                                    double v, double t, const PlantParams& params,
                                    const EstimatorGains& gains) {
    if (!std::isfinite(u) || !std::isfinite(u_dot) || !std::isfinite(v))
        throw std::domain_error("estimator_derivative: non-finite input");

    const double C = params.C;
    const double k = gains.k;
    const double uc = u / C;
    const Eigen::Matrix2d GD = gains.Gamma * gains.D;
    const Eigen::Vector2d GD_mu = GD * s.mu;

    const Eigen::Vector2d mu_dot =
        -uc * uc * k * (Eigen::Matrix2d::Identity() + gains.D) * s.mu +
        regressor(t, params);

    // eta_hat = zeta + (u/C) k v [1; Gamma D mu]; the contraction matrix
    // multiplies the full eta_hat, which is what keeps the error dynamics in
    // the pure -k (u/C)^2 M eta_bar form.
    const double iota_hat = s.zeta1 + uc * k * v;
    const Eigen::Vector2d theta_hat = s.zeta2 + uc * k * v * GD_mu;

    const double m_top = iota_hat - s.mu.dot(gains.D * theta_hat);
    const Eigen::Vector2d m_bot = GD_mu * (iota_hat + s.mu.dot(theta_hat));

    const double drive = (k / C) * v * (params.G / C * u - u_dot);

    EstimatorState d;
    d.zeta1 = -k * uc * uc * m_top - (u / params.L) * v + drive;
    d.zeta2 = -k * uc * uc * m_bot + drive * GD_mu - uc * k * v * (GD * mu_dot);
    d.mu = mu_dot;
    return d;
}

EstimateBundle estimates(const EstimatorState& s, double u, double v,
                         const PlantParams& params, const EstimatorGains& gains) {
    const double uc = u / params.C;
    const Eigen::Vector2d theta =
        s.zeta2 + uc * gains.k * v * (gains.Gamma * gains.D * s.mu);

    EstimateBundle out;
    out.theta_hat = {theta(0), theta(1)};
    out.i_hat = s.zeta1 + uc * gains.k * v + s.mu.dot(theta);
    out.E_hat = theta.norm();
    out.phase_indeterminate = (theta(0) == 0.0 && theta(1) == 0.0);
    out.rho_hat = out.phase_indeterminate ? 0.0 : std::atan2(theta(0), theta(1));
    return out;
}

Eigen::Vector3d error_dynamics_rhs(const Eigen::Vector3d& eta_bar, double u,
                                   const Eigen::Vector2d& mu,
                                   const PlantParams& params,
                                   const EstimatorGains& gains) {
    const double uc = u / params.C;
    const double gain = gains.k * uc * uc;
    const Eigen::Vector2d theta_bar = eta_bar.tail<2>();
    const Eigen::Vector2d GD_mu = gains.Gamma * gains.D * mu;

    Eigen::Vector3d out;
    out(0) = -gain * (eta_bar(0) - mu.dot(gains.D * theta_bar));
    out.tail<2>() = -gain * GD_mu * (eta_bar(0) + mu.dot(theta_bar));
    return out;
}

double lyapunov_value(const Eigen::Vector3d& eta_bar, const EstimatorGains& gains) {
    const Eigen::Vector2d theta_bar = eta_bar.tail<2>();
    return 0.5 * (eta_bar(0) * eta_bar(0) +
                  theta_bar.dot(gains.Gamma.inverse() * theta_bar));
}

PeResult pe_check(std::span<const double> t, std::span<const double> u,
                  double window, const PlantParams& params, double floor) {
    if (t.size() != u.size() || t.size() < 2)
        throw std::invalid_argument("pe_check: need matched t/u samples");
    if (!(window > 0.0) || t.back() - t.front() < window)
        throw std::invalid_argument("pe_check: trace shorter than one window");

    const std::size_t n = t.size();
    // Trapezoidal prefix sums of u^2 and u^2 phi phi^T (symmetric 2x2).
    std::vector<double> s0(n, 0.0), s11(n, 0.0), s12(n, 0.0), s22(n, 0.0);
    {
        Eigen::Vector2d phi_prev = regressor(t[0], params);
        double q_prev = u[0] * u[0];
        Eigen::Matrix2d m_prev = q_prev * phi_prev * phi_prev.transpose();
        for (std::size_t k = 1; k < n; ++k) {
            const double dt = t[k] - t[k - 1];
            const Eigen::Vector2d phi = regressor(t[k], params);
            const double q = u[k] * u[k];
            const Eigen::Matrix2d m = q * phi * phi.transpose();
            s0[k] = s0[k - 1] + 0.5 * dt * (q_prev + q);
            s11[k] = s11[k - 1] + 0.5 * dt * (m_prev(0, 0) + m(0, 0));
            s12[k] = s12[k - 1] + 0.5 * dt * (m_prev(0, 1) + m(0, 1));
            s22[k] = s22[k - 1] + 0.5 * dt * (m_prev(1, 1) + m(1, 1));
            q_prev = q;
            m_prev = m;
        }
    }

    PeResult out;
    out.min_energy = std::numeric_limits<double>::infinity();
    out.min_eigenvalue = std::numeric_limits<double>::infinity();
    std::size_t j = 0;
    for (std::size_t k = 0; k < n; ++k) {
        while (j < n && t[j] - t[k] < window) ++j;
        if (j >= n) break;
        out.min_energy = std::min(out.min_energy, s0[j] - s0[k]);
        const double a = s11[j] - s11[k];
        const double b = s12[j] - s12[k];
        const double c = s22[j] - s22[k];
        const double lmin =
            0.5 * (a + c) - std::sqrt(0.25 * (a - c) * (a - c) + b * b);
        out.min_eigenvalue = std::min(out.min_eigenvalue, lmin);
    }
    out.persistently_exciting =
        out.min_energy > floor && out.min_eigenvalue > floor;
    return out;
}

}  // namespace pfc
