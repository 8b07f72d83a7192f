#pragma once

// Running a configured simulation and recording its observables.

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "purcell/core/config.hpp"
#include "purcell/dynamics/integrator.hpp"
#include "purcell/dynamics/state.hpp"

namespace purcell::dynamics {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Velocity averaged over one spatial period of the force (theta advancing by
/// pi), placed at the midpoint of the crossing times. The average is exact:
/// the integral of w over the interval is the phase advance pi.
struct EnvelopePoint {
    double t = 0.0;
    double w = 0.0;
};

struct Envelope {
    std::vector<EnvelopePoint> points;   // only before the first zero crossing of w
    double first_zero_crossing = kNaN;   // NaN if w never changed sign
    double trap_center = kNaN;           // multiple of pi nearest to theta at the crossing
    double max_trap_excursion = 0.0;     // max |theta - trap_center| after the crossing
};

struct Trajectory {
    std::vector<std::string> columns;        // columns[0] == "t"
    std::vector<std::vector<double>> data;   // data[column][row]
    IntegratorStats stats;
    SystemState final_state;
    std::vector<Envelope> envelopes;         // first `tracked` emitters
    double ng_stop = 0.0;
    double t_threshold = kNaN;               // first time the mean n_g fell below ng_stop
    double max_population_drift = 0.0;       // max |n_g + n_e + n_i - 1| over accepted steps

    std::size_t rows() const { return data.empty() ? 0 : data.front().size(); }
    std::span<const double> times() const { return column("t"); }
    bool has_column(std::string_view name) const;
    /// Throws std::out_of_range for unknown columns.
    std::span<const double> column(std::string_view name) const;
};

/// Per-emitter observables for up to 16 emitters plus the cavity field; the
/// ensemble aggregates mean_w, std_w (and mean_ng) for many-emitter runs.
std::vector<std::string> default_observables(const core::RunConfig& cfg);

/// Column names for an observable list: per-emitter names get _<index>.
std::vector<std::string> column_names(const core::RunConfig& cfg,
                                      const std::vector<std::string>& observables);

struct SimulationOptions {
    std::size_t envelope_emitters = 16;  // how many emitters get an envelope
};

/// Integrates the configured scenario from its initial state to t_end, or
/// until the mean ground-state population drops below ng_stop.
Trajectory simulate(const core::RunConfig& cfg, const SimulationOptions& options = {});

}  // namespace purcell::dynamics
