#pragma once

// Exponential-rate fits to simulated velocity envelopes and populations.

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "purcell/dynamics/trajectory.hpp"

namespace purcell::dynamics {

/// Selection of envelope points entering a fit. Velocity bounds apply to |w|.
/// With stop_at_zero_crossing the window ends where w first changes sign;
/// otherwise a crossing inside [t_min, t_max] is an error.
struct FitWindow {
    double t_min = 0.0;
    double t_max = std::numeric_limits<double>::infinity();
    double w_max = std::numeric_limits<double>::infinity();
    double w_min = 0.0;
    std::size_t emitter = 0;
    bool stop_at_zero_crossing = true;
};

struct RateReport {
    double rate = kNaN;          // decay rate of the fitted exponential
    double amplitude = kNaN;     // fitted value at t = 0
    double t_start = kNaN;       // first and last point used
    double t_end = kNaN;
    std::size_t n_points = 0;
    double rms_residual = kNaN;  // of the log-linear fit
    bool ok = false;
    std::string message;
};

/// Least-squares slope of ln(y) against t. Needs at least three positive points.
RateReport fit_log_linear(std::span<const double> t, std::span<const double> y);

/// Fits the period-averaged velocity of one emitter. Fails when no envelope
/// was tracked, fewer than three points remain, or the window spans less than
/// one Doppler period pi/|w|.
RateReport fit_cooling_rate(const Trajectory& traj, const FitWindow& window);

/// Envelope of recorded samples: the average of w between consecutive sample
/// times at which theta passes a multiple of pi (linear interpolation).
/// Coarser than the tracked envelope; meant for externally produced series.
std::vector<EnvelopePoint> envelope_from_samples(std::span<const double> t, std::span<const double> theta);

}  // namespace purcell::dynamics
