#pragma once

// Single runs, free-space twins, free-space ensembles and parameter sweeps.

#include <string>
#include <vector>

#include <json.hpp>

#include "purcell/core/config.hpp"
#include "purcell/dynamics/fit.hpp"
#include "purcell/dynamics/trajectory.hpp"
#include "purcell/experiments/output.hpp"

namespace purcell::experiments {

struct RunOutcome {
    dynamics::Trajectory traj;
    double final_w = 0.0;            // mean w over emitters at the end of the run
    bool threshold_reached = false;  // non-closed runs: mean n_g fell below ng_stop
};

RunOutcome run(const core::RunConfig& cfg, const dynamics::SimulationOptions& options = {});

/// Free-space counterpart of a cavity configuration: same emitter rates and
/// detuning, real drive |Omega_eff|, the first emitter's initial phase and
/// velocity, and the given end time. Tolerances, ng_stop and stride carry over;
/// max_step reverts to the free-space default.
core::RunConfig free_space_twin(const core::RunConfig& cavity, double t_end);

/// Independent free-space emitters started from the ensemble initial state of
/// a many-emitter cavity configuration. Every emitter stops at its own
/// population threshold and holds its final state afterwards.
struct EnsembleOutcome {
    std::vector<double> t;
    std::vector<double> mean_w;
    std::vector<double> std_w;
    std::vector<double> mean_ng;
    double final_mean_w = 0.0;
    double t_final = 0.0;  // latest stop time over the emitters
    double max_population_drift = 0.0;
};

EnsembleOutcome run_free_space_ensemble(const core::RunConfig& cavity_many, double t_end,
                                        unsigned workers = 0);

/// Envelope fit over the window |w| <= w_max, before any zero crossing.
dynamics::RateReport fit_rate(const dynamics::Trajectory& traj, double w_max);

struct RunSpec {
    std::string name;
    nlohmann::json config;  // configuration document
};

/// Runs the configuration and writes <name>.csv and <name>.manifest.json.
std::vector<fs::path> run_simulation(const RunSpec& spec, const fs::path& out_dir);

/// One row per axis value. The axis is a dotted config path (for example
/// params.delta_a) or "cooperativity", which sets params.g = sqrt(C kappa gamma_tot).
struct SweepSpec {
    RunSpec base;
    std::string axis;
    std::vector<double> values;
    bool paired = false;  // also run the free-space twin of every point
    unsigned workers = 0;
};

/// Throws core::ConfigError for an empty, non-finite or non-monotone axis.
void validate_sweep(const SweepSpec& spec);

struct SweepResult {
    Table table;
    std::vector<std::string> errors;  // per point, empty when the point succeeded
};

SweepResult run_sweep(const SweepSpec& spec);

/// Runs the sweep and writes <name>_sweep.csv with its manifest.
std::vector<fs::path> write_sweep(const SweepSpec& spec, const fs::path& out_dir);

/// Analytic rates of a configuration as a JSON report.
nlohmann::json rates_report(const core::RunConfig& cfg);

}  // namespace purcell::experiments
