#include "pfc/controller.hpp"

#include <cmath>
#include <stdexcept>

namespace pfc {

void ControllerGains::validate() const {
    if (!(a > 0.0)) throw std::invalid_argument("controller: a must be > 0");
    if (!(b > 0.0)) throw std::invalid_argument("controller: b must be > 0");
    if (!(c > 0.0)) throw std::invalid_argument("controller: c must be > 0");
    if (!(d > 0.0)) throw std::invalid_argument("controller: d must be > 0");
    if (!(k > 0.0)) throw std::invalid_argument("controller: k must be > 0");
}

ControllerGains ControllerGains::defaults() {
    ControllerGains g;
    g.a = 1200.0;
    g.b = 2e5;
    g.d = 460.0 / 15.0;
    g.c = g.d * 150.0;  // d = c/E at the nominal source amplitude
    g.k = 15.0;
    return g;
}

DesiredCurrent desired_current(double t, const PlantParams& params, double V_d) {
    const double I0 = 2.0 * params.G * V_d * V_d / params.E;
    const double arg = params.omega * t + params.rho;
    return {I0 * std::sin(arg), I0 * params.omega * std::cos(arg)};
}

double im_error(double i, double v, double u, double t, const PlantParams& params,
                const ControllerGains& gains, double V_d) {
    const auto ref = desired_current(t, params, V_d);
    return input_voltage(t, params) - params.L * ref.di_dt -
           gains.k * (ref.i_d - i) - u * v;
}

FilterStep resonant_filter_step(const Eigen::Vector2d& x, double e_in, double gain,
                                const ControllerGains& gains, double omega) {
    const double w2 = omega * omega;
    FilterStep out;
    out.dx(0) = x(1);
    out.dx(1) = -w2 * x(0) + e_in;
    out.w = gain * ((gains.b - w2) * x(0) + gains.a * x(1) + e_in);
    return out;
}

ControlDerivative im_control_derivative(const ControllerState& ctrl, double i,
                                        double v, double w,
                                        const PlantParams& params) {
    if (v <= kVoltageFloor) return {0.0, true};
    return {(-(ctrl.u * ctrl.u / params.C) * i + w) / v, false};
}

double ce_error(const EstimateBundle& est, double v, double u, double t,
                const PlantParams& params, const ControllerGains& gains, double V_d) {
    const double load = 2.0 * params.G * V_d * V_d;         // 2 G V_d^2
    const double num = est.E_hat * est.E_hat - gains.k * load;
    const double den = -load * params.L * params.omega;
    const double q_hat = std::hypot(num, den);
    const double phi_hat = std::atan2(num, den);
    return q_hat * std::cos(params.omega * t + est.rho_hat - phi_hat) -
           est.E_hat * (u * v - gains.k * est.i_hat);
}

ControlDerivative ce_control_derivative(const ControllerState& ctrl,
                                        const EstimateBundle& est, double v,
                                        double w_hat, const PlantParams& params) {
    if (v <= kVoltageFloor) return {0.0, true};
    return {(-(ctrl.u * ctrl.u / params.C) * est.i_hat + w_hat) / v, false};
}

}  // namespace pfc
