#pragma once

// Physical parameters and scenario selection.
//
// Units: hbar = 1 and every rate is expressed in units of a reference rate
// (gamma for closed transitions, gamma + gamma' for non-closed ones). The
// emitter position is stored as the phase theta = k x and its velocity as the
// Doppler shift w = k v, so the mass only enters through the recoil frequency
// omega_rec = hbar k^2 / 2m.

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace purcell::core {

using cx = std::complex<double>;

/// Raised for invalid configuration values. `key` is the dotted key path.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& reason)
        : std::runtime_error(key.empty() ? reason : key + ": " + reason), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

struct Params {
    double gamma = 1.0;        // decay e -> g
    double gamma_prime = 0.0;  // decay e -> i, zero for closed transitions
    double kappa = 0.0;        // cavity field loss
    double g = 0.0;            // peak emitter-cavity coupling
    double delta_a = 0.0;      // omega_0 - omega_l
    double delta_c = 0.0;      // omega_c - omega_l
    double eta = 0.0;          // cavity drive amplitude
    cx omega_drive{0.0, 0.0};  // Rabi amplitude seen by the emitter
    double omega_rec = 0.0;    // recoil frequency
    int n_emitters = 1;

    double gamma_tot() const noexcept { return gamma + gamma_prime; }
};

enum class ScenarioKind {
    FreeSpaceClosed,
    CavityClosed,
    FreeSpaceNonClosed,
    CavityNonClosed,
    CavityClosedMany,
    CavityNonClosedMany,
};

constexpr bool is_cavity(ScenarioKind k) noexcept {
    return k != ScenarioKind::FreeSpaceClosed && k != ScenarioKind::FreeSpaceNonClosed;
}

constexpr bool is_closed(ScenarioKind k) noexcept {
    return k == ScenarioKind::FreeSpaceClosed || k == ScenarioKind::CavityClosed ||
           k == ScenarioKind::CavityClosedMany;
}

constexpr bool is_many(ScenarioKind k) noexcept {
    return k == ScenarioKind::CavityClosedMany || k == ScenarioKind::CavityNonClosedMany;
}

std::string_view to_string(ScenarioKind k) noexcept;

/// Throws ConfigError("scenario.kind", ...) for unknown names.
ScenarioKind scenario_kind_from_string(std::string_view name);

/// Empty-cavity drive -g eta / (kappa + i delta_c). Requires kappa > 0.
cx cavity_drive(double g, double eta, double kappa, double delta_c);

/// Drive amplitude seen by an emitter: the cavity drive for cavity scenarios,
/// the configured omega_drive otherwise.
cx effective_drive(const Params& p, ScenarioKind kind);

/// g^2 / (kappa gamma_tot).
double cooperativity(const Params& p);

/// Validated (kind, params) pair. For cavity kinds omega_drive is replaced by
/// the effective drive; closed kinds require gamma_prime == 0; single-emitter
/// kinds require n_emitters == 1.
class Scenario {
public:
    Scenario(ScenarioKind kind, Params params);

    ScenarioKind kind() const noexcept { return kind_; }
    const Params& params() const noexcept { return params_; }

private:
    ScenarioKind kind_;
    Params params_;
};

/// Parameter invariants that do not depend on the scenario. Throws ConfigError.
void validate_params(const Params& p, bool cavity);

}  // namespace purcell::core
