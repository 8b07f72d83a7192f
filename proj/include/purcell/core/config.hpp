#pragma once

// Run configuration document.
//
// The document is JSON with the sections
//   params      gamma, gamma_prime, kappa, g, delta_a, delta_c, eta, omega, omega_rec, n_emitters
//   scenario    kind
//   initial     kv0 | kv_mean + kv_std, theta0 (number or "uniform"), seed
//   integrator  rel_tol, abs_tol, t_end, max_step, ng_stop
//   recording   stride, observables
// Unknown keys are rejected. `echo_config` writes back the fully resolved
// document; parsing an echo reproduces the same RunConfig bit for bit.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "purcell/core/params.hpp"

namespace purcell::core {

struct InitialSpec {
    double kv_mean = 0.0;  // kv0 for single-emitter runs
    double kv_std = 0.0;
    bool theta_uniform = false;
    double theta0 = 0.0;
    std::uint64_t seed = 12345;
};

struct IntegratorControls {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double t_end = 0.0;
    double max_step = 1.0;
    double ng_stop = 0.0;  // stop once every n_g < ng_stop; 0 disables
};

struct RecordingControls {
    double stride = 0.0;
    std::vector<std::string> observables;  // empty selects dynamics::default_observables
};

struct RunConfig {
    Scenario scenario;
    InitialSpec initial;
    IntegratorControls integrator;
    RecordingControls recording;
};

/// Default max step: 0.5/kappa in cavity scenarios, 1 otherwise.
double default_max_step(const Scenario& s);

/// Default population threshold that operationalizes t -> infinity for
/// non-closed scenarios.
inline constexpr double kFinalPopulationThreshold = 1e-4;

RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(std::string_view text);

/// Resolved document, accepted by parse_config.
nlohmann::json echo_config(const RunConfig& cfg);

}  // namespace purcell::core
