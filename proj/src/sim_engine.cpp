#include "pfc/sim_engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace pfc {

namespace {

// Monolithic integration vector: plant (i, v), estimator (zeta1, zeta2, mu),
// controller (u, filter x).
using StateVec = std::array<double, 10>;

StateVec pack(const PlantState& p, const EstimatorState& e, const ControllerState& c) {
    return {p.i,     p.v,     e.zeta1, e.zeta2(0), e.zeta2(1),
            e.mu(0), e.mu(1), c.u,     c.x(0),     c.x(1)};
}

void unpack(const StateVec& y, PlantState& p, EstimatorState& e, ControllerState& c) {
    p.i = y[0];
    p.v = y[1];
    e.zeta1 = y[2];
    e.zeta2 = {y[3], y[4]};
    e.mu = {y[5], y[6]};
    c.u = y[7];
    c.x = {y[8], y[9]};
}

struct LoopSignals {
    double e = 0.0;      // filter input
    double w = 0.0;      // filter output
    double u_dot = 0.0;
    bool v_floored = false;
    EstimateBundle est;
    Eigen::Vector2d filter_dx = Eigen::Vector2d::Zero();
};

struct ActiveParams {
    PlantParams plant;
    double V_d = 0.0;
};

// Closed-loop signal chain at one (t, state) point; shared by the integrator
// stages and by trace recording.
LoopSignals loop_signals(double t, const PlantState& ps, const EstimatorState& es,
                         const ControllerState& cs, const Scenario& sc,
                         const ActiveParams& ap) {
    LoopSignals out;
    out.est = estimates(es, cs.u, ps.v, ap.plant, sc.estimator);
    switch (sc.mode) {
        case ControlMode::kInternalModel: {
            out.e = im_error(ps.i, ps.v, cs.u, t, ap.plant, sc.controller, ap.V_d);
            const auto f = resonant_filter_step(cs.x, out.e, sc.controller.c,
                                                sc.controller, ap.plant.omega);
            out.w = f.w;
            out.filter_dx = f.dx;
            const auto du = im_control_derivative(cs, ps.i, ps.v, f.w, ap.plant);
            out.u_dot = du.du_dt;
            out.v_floored = du.v_floored;
            break;
        }
        case ControlMode::kCertaintyEquivalent: {
            out.e = ce_error(out.est, ps.v, cs.u, t, ap.plant, sc.controller, ap.V_d);
            const auto f = resonant_filter_step(cs.x, out.e, sc.controller.d,
                                                sc.controller, ap.plant.omega);
            out.w = f.w;
            out.filter_dx = f.dx;
            const auto du = ce_control_derivative(cs, out.est, ps.v, f.w, ap.plant);
            out.u_dot = du.du_dt;
            out.v_floored = du.v_floored;
            break;
        }
        case ControlMode::kOpenLoop:
            break;
    }
    return out;
}

StateVec derivative(double t, const StateVec& y, const Scenario& sc,
                    const ActiveParams& ap, bool* v_floored) {
    PlantState ps;
    EstimatorState es;
    ControllerState cs;
    unpack(y, ps, es, cs);
    // Integrator stages may drift past the duty limit before the post-step
    // clamp; the plant and estimator always see the saturated value.
    cs.u = std::clamp(cs.u, -1.0, 1.0);

    const LoopSignals sig = loop_signals(t, ps, es, cs, sc, ap);
    if (v_floored && sig.v_floored) *v_floored = true;

    const PlantState pd = plant_derivative(ps, cs.u, t, ap.plant);
    const EstimatorState ed = estimator_derivative(es, cs.u, sig.u_dot, ps.v, t,
                                                   ap.plant, sc.estimator);

    // Reuse the packing layout for the derivative vector.
    return pack(pd, ed, ControllerState{sig.u_dot, sig.filter_dx});
}

void apply_event(ActiveParams& ap, const Event& ev) {
    if (ev.path == "plant.E")
        ap.plant.E = ev.value;
    else if (ev.path == "plant.rho")
        ap.plant.rho = ev.value;
    else if (ev.path == "plant.G")
        ap.plant.G = ev.value;
    else if (ev.path == "plant.r")
        ap.plant.r = ev.value;
    else if (ev.path == "plant.L")
        ap.plant.L = ev.value;
    else if (ev.path == "plant.C")
        ap.plant.C = ev.value;
    else if (ev.path == "plant.i_limit")
        ap.plant.i_limit = ev.value;
    else if (ev.path == "ref.V_d")
        ap.V_d = ev.value;
    else
        throw std::invalid_argument("scenario: unknown event path '" + ev.path + "'");
}

bool finite(const StateVec& y) {
    for (double v : y)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace

std::string to_string(ControlMode mode) {
    switch (mode) {
        case ControlMode::kInternalModel: return "im";
        case ControlMode::kCertaintyEquivalent: return "ce";
        case ControlMode::kOpenLoop: return "open_loop";
    }
    return "?";
}

void Scenario::validate() const {
    plant.validate();
    controller.validate();
    estimator.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("scenario: dt must be > 0");
    if (!(duration > 0.0))
        throw std::invalid_argument("scenario: duration must be > 0");
    if (!(V_d > 0.0)) throw std::invalid_argument("scenario: V_d must be > 0");
    if (record_stride < 1)
        throw std::invalid_argument("scenario: record_stride must be >= 1");

    double prev = -1.0;
    for (const Event& ev : events) {
        if (ev.time <= prev)
            throw std::invalid_argument("scenario: events must be strictly sorted by time");
        prev = ev.time;
        if (ev.time > duration)
            throw std::invalid_argument("scenario: event beyond duration");
        const double steps = ev.time / dt;
        if (std::abs(steps - std::round(steps)) > 1e-6)
            throw std::invalid_argument("scenario: dt must divide event time " +
                                        std::to_string(ev.time));
        ActiveParams probe{plant, V_d};
        apply_event(probe, ev);  // path check
    }
}

Trace simulate(const Scenario& scenario) {
    scenario.validate();

    const long n_steps = std::lround(scenario.duration / scenario.dt);
    ActiveParams ap{scenario.plant, scenario.V_d};

    PlantState ps = scenario.initial;
    EstimatorState es;  // zero init
    ControllerState cs;
    cs.u = scenario.mode == ControlMode::kOpenLoop ? scenario.open_loop_u : 0.0;
    StateVec y = pack(ps, es, cs);

    Trace tr;
    const std::size_t reserve = static_cast<std::size_t>(
        n_steps / scenario.record_stride + 2);
    for (auto* col : {&tr.t, &tr.i, &tr.v, &tr.u, &tr.u_dot, &tr.i_hat,
                      &tr.theta1_hat, &tr.theta2_hat, &tr.rho_hat, &tr.E_hat,
                      &tr.v_in, &tr.i_d, &tr.e, &tr.w, &tr.mu1, &tr.mu2,
                      &tr.param_E, &tr.param_rho, &tr.param_G, &tr.param_V_d})
        col->reserve(reserve);
    tr.saturation.reserve(reserve);

    std::size_t next_event = 0;
    std::uint8_t sat_flags = 0;

    for (long k = 0; k <= n_steps; ++k) {
        const double t = static_cast<double>(k) * scenario.dt;

        while (next_event < scenario.events.size() &&
               std::lround(scenario.events[next_event].time / scenario.dt) == k) {
            apply_event(ap, scenario.events[next_event]);
            ++next_event;
        }

        if (k % scenario.record_stride == 0) {
            unpack(y, ps, es, cs);
            const LoopSignals sig = loop_signals(t, ps, es, cs, scenario, ap);
            if (sig.v_floored) sat_flags |= 4;
            tr.t.push_back(t);
            tr.i.push_back(ps.i);
            tr.v.push_back(ps.v);
            tr.u.push_back(cs.u);
            tr.u_dot.push_back(sig.u_dot);
            tr.i_hat.push_back(sig.est.i_hat);
            tr.theta1_hat.push_back(sig.est.theta_hat.theta1);
            tr.theta2_hat.push_back(sig.est.theta_hat.theta2);
            tr.rho_hat.push_back(sig.est.rho_hat);
            tr.E_hat.push_back(sig.est.E_hat);
            tr.v_in.push_back(input_voltage(t, ap.plant));
            tr.i_d.push_back(desired_current(t, ap.plant, ap.V_d).i_d);
            tr.e.push_back(sig.e);
            tr.w.push_back(sig.w);
            tr.mu1.push_back(es.mu(0));
            tr.mu2.push_back(es.mu(1));
            tr.saturation.push_back(sat_flags);
            tr.param_E.push_back(ap.plant.E);
            tr.param_rho.push_back(ap.plant.rho);
            tr.param_G.push_back(ap.plant.G);
            tr.param_V_d.push_back(ap.V_d);
            sat_flags = 0;
        }

        if (k == n_steps) break;

        const double h = scenario.dt;
        bool floored = false;
        StateVec k1 = derivative(t, y, scenario, ap, &floored);
        StateVec y2, y3, y4;
        for (std::size_t j = 0; j < y.size(); ++j) y2[j] = y[j] + 0.5 * h * k1[j];
        StateVec k2 = derivative(t + 0.5 * h, y2, scenario, ap, &floored);
        for (std::size_t j = 0; j < y.size(); ++j) y3[j] = y[j] + 0.5 * h * k2[j];
        StateVec k3 = derivative(t + 0.5 * h, y3, scenario, ap, &floored);
        for (std::size_t j = 0; j < y.size(); ++j) y4[j] = y[j] + h * k3[j];
        StateVec k4 = derivative(t + h, y4, scenario, ap, &floored);
        for (std::size_t j = 0; j < y.size(); ++j)
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);

        if (floored) sat_flags |= 4;
        if (y[7] > 1.0) {
            y[7] = 1.0;
            sat_flags |= 1;
        } else if (y[7] < -1.0) {
            y[7] = -1.0;
            sat_flags |= 1;
        }
        if (ap.plant.i_limit) {
            const double lim = *ap.plant.i_limit;
            if (y[0] > lim) {
                y[0] = lim;
                sat_flags |= 2;
            } else if (y[0] < -lim) {
                y[0] = -lim;
                sat_flags |= 2;
            }
        }

        if (!finite(y)) {
            tr.aborted = true;
            tr.abort_time = t + h;
            tr.abort_reason = "non-finite state at t=" + std::to_string(t + h);
            break;
        }
    }
    return tr;
}

Scenario standard_scenario() {
    Scenario sc;
    sc.initial = {1.5, 100.0};
    sc.duration = 2.1;
    sc.dt = 1e-5;
    sc.mode = ControlMode::kCertaintyEquivalent;
    sc.plant.L = 2.13e-3;
    sc.plant.C = 1100e-6;
    sc.plant.G = 1.0 / 87.0;
    sc.plant.r = 2.0;
    sc.plant.E = 150.0;
    sc.plant.omega = 100.0 * M_PI;
    sc.plant.rho = 2.0 * M_PI / 3.0;
    sc.plant.i_limit = 14.0;
    sc.controller = ControllerGains::defaults();
    sc.estimator = EstimatorGains::defaults();
    sc.V_d = 200.0;
    sc.events = {
        {0.5, "plant.E", 120.0},
        {0.9, "plant.rho", 0.0},
        {1.3, "ref.V_d", 160.0},
        {1.7, "plant.G", 1.0 / 51.0},
    };
    sc.record_stride = 1;
    return sc;
}

std::pair<Trace, Trace> run_pair(const Scenario& scenario) {
    Scenario im = scenario;
    im.mode = ControlMode::kInternalModel;
    Scenario ce = scenario;
    ce.mode = ControlMode::kCertaintyEquivalent;
    return {simulate(im), simulate(ce)};
}

}  // namespace pfc
