#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pfc/controller.hpp"
#include "pfc/estimator.hpp"
#include "pfc/plant.hpp"

namespace pfc {

enum class ControlMode {
    kInternalModel,        ///< measured-feedback dynamic law
    kCertaintyEquivalent,  ///< estimator-driven law
    kOpenLoop,             ///< u held constant (diagnostics)
};

std::string to_string(ControlMode mode);

/// Timed parameter change. Paths use dotted form, e.g. "plant.E", "plant.rho",
/// "plant.G", "plant.r", "plant.L", "plant.C", "plant.i_limit", "ref.V_d".
struct Event {
    double time = 0.0;
    std::string path;
    double value = 0.0;
};

struct Scenario {
    PlantState initial{0.0, 0.0};
    double duration = 0.0;
    double dt = 1e-5;
    ControlMode mode = ControlMode::kCertaintyEquivalent;
    double open_loop_u = 0.0;  ///< control value in kOpenLoop mode
    PlantParams plant;
    ControllerGains controller;
    EstimatorGains estimator;
    double V_d = 0.0;
    std::vector<Event> events;  ///< sorted strictly by time
    int record_stride = 1;

    /// Throws std::invalid_argument on inconsistent configuration (dt <= 0,
    /// unsorted events, event times not on the step grid, ...).
    void validate() const;
};

/// Uniformly sampled closed-loop record, one vector per column.
struct Trace {
    std::vector<double> t;
    std::vector<double> i;
    std::vector<double> v;
    std::vector<double> u;
    std::vector<double> u_dot;
    std::vector<double> i_hat;
    std::vector<double> theta1_hat;
    std::vector<double> theta2_hat;
    std::vector<double> rho_hat;
    std::vector<double> E_hat;
    std::vector<double> v_in;
    std::vector<double> i_d;
    std::vector<double> e;   ///< filter input (measured or estimated, per mode)
    std::vector<double> w;   ///< filter output fed to the control law
    std::vector<double> mu1;
    std::vector<double> mu2;
    /// bit 0: u clamped during the step ending here; bit 1: current limiter hit.
    std::vector<std::uint8_t> saturation;

    /// Effective parameter values at each sample (events show up exactly at
    /// their timestamp).
    std::vector<double> param_E;
    std::vector<double> param_rho;
    std::vector<double> param_G;
    std::vector<double> param_V_d;

    bool aborted = false;
    double abort_time = 0.0;
    std::string abort_reason;

    std::size_t size() const { return t.size(); }
};

/// Fixed-step 4th-order integration of plant + estimator + controller.
/// On a non-finite state the trace is returned truncated with `aborted` set.
Trace simulate(const Scenario& scenario);

/// The reference experiment: nominal parameters, zero controller/estimator
/// init, i(0)=1.5 A, v(0)=100 V, and the four scheduled step changes
/// (E 150->120 at 0.5 s, rho 2pi/3->0 at 0.9 s, V_d 200->160 at 1.3 s,
/// load 87->51 ohm at 1.7 s); 2.1 s at dt=1e-5.
Scenario standard_scenario();

/// Same scenario executed in both closed-loop modes.
std::pair<Trace, Trace> run_pair(const Scenario& scenario);

}  // namespace pfc
