#include "purcell/core/params.hpp"

#include <array>
#include <cmath>
#include <utility>

namespace purcell::core {

namespace {

constexpr std::array<std::pair<ScenarioKind, std::string_view>, 6> kKindNames{{
    {ScenarioKind::FreeSpaceClosed, "FreeSpaceClosed"},
    {ScenarioKind::CavityClosed, "CavityClosed"},
    {ScenarioKind::FreeSpaceNonClosed, "FreeSpaceNonClosed"},
    {ScenarioKind::CavityNonClosed, "CavityNonClosed"},
    {ScenarioKind::CavityClosedMany, "CavityClosedMany"},
    {ScenarioKind::CavityNonClosedMany, "CavityNonClosedMany"},
}};

void require(bool ok, const char* key, const char* reason) {
    if (!ok) throw ConfigError(key, reason);
}

}  // namespace

std::string_view to_string(ScenarioKind k) noexcept {
    for (const auto& [kind, name] : kKindNames)
        if (kind == k) return name;
    return "unknown";
}

ScenarioKind scenario_kind_from_string(std::string_view name) {
    for (const auto& [kind, n] : kKindNames)
        if (n == name) return kind;
    throw ConfigError("scenario.kind", "unknown scenario kind '" + std::string(name) + "'");
}

cx cavity_drive(double g, double eta, double kappa, double delta_c) {
    if (!(kappa > 0.0)) throw ConfigError("params.kappa", "must be > 0 for a cavity scenario");
    return -g * eta / cx(kappa, delta_c);
}

cx effective_drive(const Params& p, ScenarioKind kind) {
    if (is_cavity(kind)) return cavity_drive(p.g, p.eta, p.kappa, p.delta_c);
    return p.omega_drive;
}

double cooperativity(const Params& p) {
    const double gt = p.gamma_tot();
    if (!(p.kappa > 0.0)) throw ConfigError("params.kappa", "cooperativity needs kappa > 0");
    if (!(gt > 0.0)) throw ConfigError("params.gamma", "cooperativity needs gamma_tot > 0");
    return p.g * p.g / (p.kappa * gt);
}

void validate_params(const Params& p, bool cavity) {
    auto finite = [](double x) { return std::isfinite(x); };
    require(finite(p.gamma) && p.gamma >= 0.0, "params.gamma", "must be finite and >= 0");
    require(finite(p.gamma_prime) && p.gamma_prime >= 0.0, "params.gamma_prime",
            "must be finite and >= 0");
    require(p.gamma_tot() > 0.0, "params.gamma", "gamma + gamma_prime must be > 0");
    require(finite(p.g) && p.g >= 0.0, "params.g", "must be finite and >= 0");
    require(finite(p.eta) && p.eta >= 0.0, "params.eta", "must be finite and >= 0");
    require(finite(p.delta_a), "params.delta_a", "must be finite");
    require(finite(p.delta_c), "params.delta_c", "must be finite");
    require(finite(p.omega_rec) && p.omega_rec > 0.0, "params.omega_rec", "must be > 0");
    require(p.n_emitters >= 1, "params.n_emitters", "must be >= 1");
    require(finite(p.omega_drive.real()) && finite(p.omega_drive.imag()), "params.omega",
            "must be finite");
    if (cavity) require(finite(p.kappa) && p.kappa > 0.0, "params.kappa", "must be > 0");
}

Scenario::Scenario(ScenarioKind kind, Params params) : kind_(kind), params_(params) {
    validate_params(params_, is_cavity(kind_));
    if (is_closed(kind_) && params_.gamma_prime != 0.0)
        throw ConfigError("params.gamma_prime",
                          "must be 0 for closed scenario " + std::string(to_string(kind_)));
    if (!is_many(kind_) && params_.n_emitters != 1)
        throw ConfigError("params.n_emitters",
                          "must be 1 for single-emitter scenario " + std::string(to_string(kind_)));
    if (is_cavity(kind_)) params_.omega_drive = effective_drive(params_, kind_);
}

}  // namespace purcell::core
