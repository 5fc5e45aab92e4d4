#pragma once

#include <span>
#include <vector>

#include "pfc/sim_engine.hpp"

namespace pfc {

struct Phasor {
    double amplitude = 0.0;
    double phase = 0.0;  ///< [rad], in (-pi, pi], of amplitude*sin(w t + phase)
};

struct Window {
    double t_start = 0.0;
    double t_end = 0.0;
};

enum class Signal {
    kInductorCurrent,
    kOutputVoltage,
    kInputVoltage,
    kControl,
};

/// Power-quality summary over a steady-state window.
struct HarmonicReport {
    double displacement_deg = 0.0;  ///< phase(v_in) - phase(i), fundamental [deg]
    double thd = 0.0;               ///< input-current THD, fraction
    double power_factor = 0.0;      ///< displacement factor * distortion factor
    double dc_error = 0.0;          ///< |V_d - mean(v)| [V]
    Window window;
    bool degenerate = false;        ///< zero-amplitude fundamental

    double thd_pct() const { return 100.0 * thd; }
};

/// Fourier coefficient of x at harmonic n of omega via trapezoidal quadrature.
/// The time span must cover an integer number of fundamental periods.
Phasor harmonic_phasor(std::span<const double> t, std::span<const double> x,
                       double omega, int n);

/// Fundamental (n = 1) phasor of a trace column over a window. Throws
/// std::invalid_argument when the window is misaligned with the period.
Phasor fundamental_phasor(const Trace& trace, Signal signal, Window window,
                          double omega);

/// Displacement, THD (harmonics 2..max_harmonic on the input current),
/// power factor, and DC error over the window.
HarmonicReport harmonic_report(const Trace& trace, Window window, double V_d,
                               double omega, int max_harmonic = 50);

/// Per-line-period mean of the output voltage; one (period start, mean) pair
/// per period, stepping `stride` periods at a time.
std::vector<std::pair<double, double>> dc_trend(const Trace& trace, double omega,
                                                int stride = 1);

/// Mean of x over [t.front(), t.back()] by trapezoidal quadrature.
double window_mean(std::span<const double> t, std::span<const double> x);

/// RMS of x over the same span.
double window_rms(std::span<const double> t, std::span<const double> x);

/// Column view of a trace.
std::span<const double> signal_column(const Trace& trace, Signal signal);

/// Last n full line periods before t_end, snapped onto the sample grid.
Window last_periods(const Trace& trace, double omega, int n_periods,
                    double t_end);

}  // namespace pfc
