#include "purcell/core/config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>

namespace purcell::core {

using nlohmann::json;

namespace {

const std::set<std::string> kSections{"params", "scenario", "initial", "integrator", "recording"};
const std::set<std::string> kParamKeys{"gamma", "gamma_prime", "kappa",     "g",         "delta_a",
                                       "delta_c", "eta",       "omega", "omega_rec", "n_emitters"};
const std::set<std::string> kScenarioKeys{"kind"};
const std::set<std::string> kInitialKeys{"kv0", "kv_mean", "kv_std", "theta0", "seed"};
const std::set<std::string> kIntegratorKeys{"rel_tol", "abs_tol", "t_end", "max_step", "ng_stop"};
const std::set<std::string> kRecordingKeys{"stride", "observables"};

// Observables that may be requested; per-emitter names get an _<index> suffix
// in the output, the mean_/std_ names are ensemble aggregates.
const std::set<std::string> kObservables{"w",         "theta",     "ng",     "ne",    "ni",
                                         "abs_beta",  "abs_alpha", "arg_alpha", "mean_w",
                                         "std_w",     "mean_ng"};

void check_keys(const json& section, const std::string& name, const std::set<std::string>& allowed) {
    if (!section.is_object()) throw ConfigError(name, "must be an object");
    for (const auto& [key, value] : section.items()) {
        if (!allowed.contains(key)) throw ConfigError(name + "." + key, "unknown key");
    }
}

const json& section_or_empty(const json& doc, const char* name) {
    static const json empty = json::object();
    auto it = doc.find(name);
    return it == doc.end() ? empty : *it;
}

std::optional<double> opt_number(const json& section, const std::string& path, const char* key) {
    auto it = section.find(key);
    if (it == section.end()) return std::nullopt;
    if (!it->is_number()) throw ConfigError(path + "." + key, "must be a number");
    const double v = it->get<double>();
    if (!std::isfinite(v)) throw ConfigError(path + "." + key, "must be finite");
    return v;
}

double req_number(const json& section, const std::string& path, const char* key) {
    auto v = opt_number(section, path, key);
    if (!v) throw ConfigError(path + "." + key, "missing required key");
    return *v;
}

}  // namespace

double default_max_step(const Scenario& s) {
    return is_cavity(s.kind()) ? 0.5 / s.params().kappa : 1.0;
}

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("", "config document must be an object");
    for (const auto& [key, value] : doc.items())
        if (!kSections.contains(key)) throw ConfigError(key, "unknown section");

    const json& jp = section_or_empty(doc, "params");
    const json& js = section_or_empty(doc, "scenario");
    const json& ji = section_or_empty(doc, "initial");
    const json& jn = section_or_empty(doc, "integrator");
    const json& jr = section_or_empty(doc, "recording");
    check_keys(jp, "params", kParamKeys);
    check_keys(js, "scenario", kScenarioKeys);
    check_keys(ji, "initial", kInitialKeys);
    check_keys(jn, "integrator", kIntegratorKeys);
    check_keys(jr, "recording", kRecordingKeys);

    auto kind_it = js.find("kind");
    if (kind_it == js.end()) throw ConfigError("scenario.kind", "missing required key");
    if (!kind_it->is_string()) throw ConfigError("scenario.kind", "must be a string");
    const ScenarioKind kind = scenario_kind_from_string(kind_it->get<std::string>());

    Params p;
    p.gamma = opt_number(jp, "params", "gamma").value_or(1.0);
    p.gamma_prime = opt_number(jp, "params", "gamma_prime").value_or(0.0);
    p.delta_a = req_number(jp, "params", "delta_a");
    p.omega_rec = req_number(jp, "params", "omega_rec");
    if (auto it = jp.find("n_emitters"); it != jp.end()) {
        if (!it->is_number_integer()) throw ConfigError("params.n_emitters", "must be an integer");
        p.n_emitters = it->get<int>();
    }
    if (is_cavity(kind)) {
        if (jp.contains("omega"))
            throw ConfigError("params.omega", "derived from g, eta, kappa, delta_c in cavity scenarios");
        p.kappa = req_number(jp, "params", "kappa");
        p.g = req_number(jp, "params", "g");
        p.eta = req_number(jp, "params", "eta");
        p.delta_c = opt_number(jp, "params", "delta_c").value_or(p.delta_a);
    } else {
        for (const char* key : {"kappa", "g", "eta", "delta_c"})
            if (jp.contains(key))
                throw ConfigError(std::string("params.") + key, "not used in free-space scenarios");
        p.omega_drive = req_number(jp, "params", "omega");
    }

    RunConfig cfg{Scenario(kind, p), {}, {}, {}};

    InitialSpec& init = cfg.initial;
    const auto kv0 = opt_number(ji, "initial", "kv0");
    const auto kv_mean = opt_number(ji, "initial", "kv_mean");
    if (kv0 && kv_mean) throw ConfigError("initial.kv0", "give either kv0 or kv_mean, not both");
    if (!kv0 && !kv_mean) throw ConfigError("initial.kv0", "missing required key (or kv_mean)");
    init.kv_mean = kv0 ? *kv0 : *kv_mean;
    init.kv_std = opt_number(ji, "initial", "kv_std").value_or(0.0);
    if (init.kv_std < 0.0) throw ConfigError("initial.kv_std", "must be >= 0");
    if (kv0 && ji.contains("kv_std")) throw ConfigError("initial.kv_std", "requires kv_mean");
    if (init.kv_std > 0.0 && !is_many(kind))
        throw ConfigError("initial.kv_std", "velocity spread needs a many-emitter scenario");
    if (auto it = ji.find("theta0"); it != ji.end()) {
        if (it->is_string()) {
            if (it->get<std::string>() != "uniform")
                throw ConfigError("initial.theta0", "must be a number or \"uniform\"");
            init.theta_uniform = true;
        } else if (it->is_number()) {
            init.theta0 = it->get<double>();
        } else {
            throw ConfigError("initial.theta0", "must be a number or \"uniform\"");
        }
    } else {
        init.theta_uniform = is_many(kind);
    }
    if (auto it = ji.find("seed"); it != ji.end()) {
        if (!it->is_number_integer() || it->get<std::int64_t>() < 0) throw ConfigError("initial.seed", "must be a non-negative integer");
        init.seed = it->get<std::uint64_t>();
    }

    IntegratorControls& ic = cfg.integrator;
    ic.t_end = req_number(jn, "integrator", "t_end");
    if (!(ic.t_end > 0.0)) throw ConfigError("integrator.t_end", "must be > 0");
    ic.rel_tol = opt_number(jn, "integrator", "rel_tol").value_or(1e-8);
    ic.abs_tol = opt_number(jn, "integrator", "abs_tol").value_or(1e-10);
    if (!(ic.rel_tol > 0.0)) throw ConfigError("integrator.rel_tol", "must be > 0");
    if (!(ic.abs_tol > 0.0)) throw ConfigError("integrator.abs_tol", "must be > 0");
    ic.max_step = opt_number(jn, "integrator", "max_step").value_or(default_max_step(cfg.scenario));
    if (!(ic.max_step > 0.0)) throw ConfigError("integrator.max_step", "must be > 0");
    ic.ng_stop = opt_number(jn, "integrator", "ng_stop")
                     .value_or(is_closed(kind) ? 0.0 : kFinalPopulationThreshold);
    if (ic.ng_stop < 0.0 || ic.ng_stop >= 1.0) throw ConfigError("integrator.ng_stop", "must be in [0, 1)");
    if (is_closed(kind) && ic.ng_stop != 0.0)
        throw ConfigError("integrator.ng_stop", "closed scenarios carry no populations");

    RecordingControls& rc = cfg.recording;
    rc.stride = opt_number(jr, "recording", "stride").value_or(ic.t_end / 2000.0);
    if (!(rc.stride > 0.0)) throw ConfigError("recording.stride", "must be > 0");
    if (auto it = jr.find("observables"); it != jr.end()) {
        if (!it->is_array()) throw ConfigError("recording.observables", "must be an array of names");
        for (const auto& o : *it) {
            if (!o.is_string() || !kObservables.contains(o.get<std::string>()))
                throw ConfigError("recording.observables", "unknown observable " + o.dump());
            const auto name = o.get<std::string>();
            const bool population = name == "ng" || name == "ne" || name == "ni" || name == "mean_ng";
            const bool field = name == "abs_alpha" || name == "arg_alpha";
            if (population && is_closed(kind))
                throw ConfigError("recording.observables", name + " needs a non-closed scenario");
            if (field && !is_cavity(kind))
                throw ConfigError("recording.observables", name + " needs a cavity scenario");
            rc.observables.push_back(name);
        }
    }
    return cfg;
}

RunConfig parse_config_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("malformed document: ") + e.what());
    }
    return parse_config(doc);
}

json echo_config(const RunConfig& cfg) {
    const Params& p = cfg.scenario.params();
    const ScenarioKind kind = cfg.scenario.kind();
    json params{{"gamma", p.gamma},         {"gamma_prime", p.gamma_prime}, {"delta_a", p.delta_a},
                {"omega_rec", p.omega_rec}, {"n_emitters", p.n_emitters}};
    if (is_cavity(kind)) {
        params["kappa"] = p.kappa;
        params["g"] = p.g;
        params["eta"] = p.eta;
        params["delta_c"] = p.delta_c;
    } else {
        params["omega"] = p.omega_drive.real();
    }

    json initial{{"kv_mean", cfg.initial.kv_mean}, {"kv_std", cfg.initial.kv_std},
                 {"seed", cfg.initial.seed}};
    if (cfg.initial.theta_uniform)
        initial["theta0"] = "uniform";
    else
        initial["theta0"] = cfg.initial.theta0;

    return json{
        {"params", params},
        {"scenario", {{"kind", std::string(to_string(kind))}}},
        {"initial", initial},
        {"integrator",
         {{"rel_tol", cfg.integrator.rel_tol},
          {"abs_tol", cfg.integrator.abs_tol},
          {"t_end", cfg.integrator.t_end},
          {"max_step", cfg.integrator.max_step},
          {"ng_stop", cfg.integrator.ng_stop}}},
        {"recording", {{"stride", cfg.recording.stride}, {"observables", cfg.recording.observables}}},
    };
}

}  // namespace purcell::core
