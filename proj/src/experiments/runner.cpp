#include "purcell/experiments/runner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "purcell/analytics/rates.hpp"
#include "purcell/dynamics/state.hpp"

namespace purcell::experiments {

using nlohmann::json;

namespace {

bool is_per_emitter(const std::string& o) {
    return o == "w" || o == "theta" || o == "ng" || o == "ne" || o == "ni" || o == "abs_beta";
}

json stats_json(const dynamics::Trajectory& traj) {
    const auto& s = traj.stats;
    json j{{"steps", s.steps},
           {"rejected", s.rejected},
           {"rhs_evals", s.rhs_evals},
           {"smallest_step", s.smallest_step},
           {"largest_step", s.largest_step},
           {"t_final", s.t_final},
           {"stopped_early", s.stopped_early},
           {"max_population_drift", traj.max_population_drift}};
    if (traj.ng_stop > 0.0) {
        j["ng_stop"] = traj.ng_stop;
        j["t_threshold"] = std::isnan(traj.t_threshold) ? json(nullptr) : json(traj.t_threshold);
    }
    return j;
}

Table trajectory_table(const dynamics::Trajectory& traj) {
    Table t;
    for (std::size_t c = 0; c < traj.columns.size(); ++c) t.add(traj.columns[c], traj.data[c]);
    return t;
}

void set_path(json& doc, const std::string& path, double value) {
    json* node = &doc;
    std::stringstream ss(path);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) parts.push_back(part);
    if (parts.size() < 2) throw core::ConfigError(path, "axis must be a dotted key such as params.g");
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        if (!node->is_object()) throw core::ConfigError(path, "not an object along the path");
        node = &(*node)[parts[i]];
    }
    (*node)[parts.back()] = value;
}

json nan_safe(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

RunOutcome run(const core::RunConfig& cfg, const dynamics::SimulationOptions& options) {
    RunOutcome out;
    out.traj = dynamics::simulate(cfg, options);
    double s = 0.0;
    for (const auto& e : out.traj.final_state.emitters) s += e.w;
    out.final_w = s / static_cast<double>(out.traj.final_state.emitters.size());
    out.threshold_reached = !std::isnan(out.traj.t_threshold);
    return out;
}

core::RunConfig free_space_twin(const core::RunConfig& cavity, double t_end) {
    const auto& p = cavity.scenario.params();
    const bool closed = core::is_closed(cavity.scenario.kind());
    const auto kv = dynamics::initial_velocities(cavity.initial, p.n_emitters);
    const auto theta = dynamics::initial_phases(cavity.initial, p.n_emitters);
    json obs = json::array();
    for (const auto& o : cavity.recording.observables)
        if (is_per_emitter(o)) obs.push_back(o);
    json integ{{"rel_tol", cavity.integrator.rel_tol},
               {"abs_tol", cavity.integrator.abs_tol},
               {"t_end", t_end}};
    if (!closed) integ["ng_stop"] = cavity.integrator.ng_stop;
    const json doc{
        {"params",
         {{"gamma", p.gamma},
          {"gamma_prime", p.gamma_prime},
          {"delta_a", p.delta_a},
          {"omega", std::abs(p.omega_drive)},
          {"omega_rec", p.omega_rec}}},
        {"scenario", {{"kind", closed ? "FreeSpaceClosed" : "FreeSpaceNonClosed"}}},
        {"initial", {{"kv0", kv.front()}, {"theta0", theta.front()}}},
        {"integrator", integ},
        {"recording", {{"stride", cavity.recording.stride}, {"observables", obs}}},
    };
    return core::parse_config(doc);
}

EnsembleOutcome run_free_space_ensemble(const core::RunConfig& cavity_many, double t_end, unsigned workers) {
    const auto& p = cavity_many.scenario.params();
    const int n = p.n_emitters;
    const auto kv = dynamics::initial_velocities(cavity_many.initial, n);
    const auto theta = dynamics::initial_phases(cavity_many.initial, n);
    const bool closed = core::is_closed(cavity_many.scenario.kind());

    core::RunConfig base = free_space_twin(cavity_many, t_end);
    base.recording.observables = closed ? std::vector<std::string>{"w"} : std::vector<std::string>{"w", "ng"};
    std::vector<RunOutcome> runs(static_cast<std::size_t>(n));
    parallel_for(runs.size(), workers, [&](std::size_t j) {
        core::RunConfig cfg = base;
        cfg.initial.kv_mean = kv[j];
        cfg.initial.theta0 = theta[j];
        dynamics::SimulationOptions opt;
        opt.envelope_emitters = 0;
        runs[j] = run(cfg, opt);
    });

    const double stride = base.recording.stride;
    EnsembleOutcome out;
    std::size_t grid = 0;
    for (const auto& r : runs) {
        out.t_final = std::max(out.t_final, r.traj.stats.t_final);
        out.max_population_drift = std::max(out.max_population_drift, r.traj.max_population_drift);
        grid = std::max(grid, static_cast<std::size_t>(std::floor(r.traj.stats.t_final / stride)) + 1);
    }
    out.t.resize(grid);
    out.mean_w.assign(grid, 0.0);
    out.std_w.assign(grid, 0.0);
    out.mean_ng.assign(grid, 0.0);
    std::vector<double> w_at(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < grid; ++k) {
        out.t[k] = static_cast<double>(k) * stride;
        double sw = 0.0, sng = 0.0;
        for (std::size_t j = 0; j < runs.size(); ++j) {
            const auto& tr = runs[j].traj;
            // Grid rows are the samples at k * stride; past the stop the final state holds.
            const std::size_t on_grid = std::min(
                tr.rows(), static_cast<std::size_t>(std::floor(tr.stats.t_final / stride)) + 1);
            const auto& e = tr.final_state.emitters.front();
            const bool have = k < on_grid;
            w_at[j] = have ? tr.data[1][k] : e.w;
            sw += w_at[j];
            if (!closed) sng += have ? tr.data[2][k] : e.n_g;
        }
        const double m = sw / n;
        double var = 0.0;
        for (double w : w_at) var += (w - m) * (w - m);
        out.mean_w[k] = m;
        out.std_w[k] = std::sqrt(var / n);
        out.mean_ng[k] = closed ? 1.0 : sng / n;
    }
    double s = 0.0;
    for (const auto& r : runs) s += r.final_w;
    out.final_mean_w = s / n;
    return out;
}

dynamics::RateReport fit_rate(const dynamics::Trajectory& traj, double w_max) {
    dynamics::FitWindow w;
    w.w_max = w_max;
    return dynamics::fit_cooling_rate(traj, w);
}

std::vector<fs::path> run_simulation(const RunSpec& spec, const fs::path& out_dir) {
    const core::RunConfig cfg = core::parse_config(spec.config);
    const RunOutcome out = run(cfg);
    const fs::path csv = out_dir / (spec.name + ".csv");
    write_csv(csv, trajectory_table(out.traj));
    json manifest{{"name", spec.name},
                  {"config", core::echo_config(cfg)},
                  {"columns", out.traj.columns},
                  {"stats", stats_json(out.traj)},
                  {"final_w", out.final_w},
                  {"rates", rates_report(cfg)}};
    const fs::path man = out_dir / (spec.name + ".manifest.json");
    const std::vector<fs::path> artifacts{csv};
    write_manifest(man, manifest, artifacts);
    return {csv, man};
}

void validate_sweep(const SweepSpec& spec) {
    if (spec.values.empty()) throw core::ConfigError("sweep.values", "axis has no values");
    for (double v : spec.values)
        if (!std::isfinite(v)) throw core::ConfigError("sweep.values", "axis values must be finite");
    if (spec.values.size() > 1) {
        const bool up = spec.values[1] > spec.values[0];
        for (std::size_t i = 1; i < spec.values.size(); ++i) {
            const bool ok = up ? spec.values[i] > spec.values[i - 1] : spec.values[i] < spec.values[i - 1];
            if (!ok) throw core::ConfigError("sweep.values", "axis values must be strictly monotone");
        }
    }
    if (spec.axis.empty()) throw core::ConfigError("sweep.axis", "missing axis");
}

SweepResult run_sweep(const SweepSpec& spec) {
    validate_sweep(spec);
    const core::RunConfig base = core::parse_config(spec.base.config);
    // Fail early on an axis the base document cannot take.
    std::vector<json> docs;
    for (double v : spec.values) {
        json doc = spec.base.config;
        if (spec.axis == "cooperativity") {
            const auto& p = base.scenario.params();
            if (!core::is_cavity(base.scenario.kind()))
                throw core::ConfigError("sweep.axis", "cooperativity needs a cavity scenario");
            if (v < 0.0) throw core::ConfigError("sweep.values", "cooperativity must be >= 0");
            set_path(doc, "params.g", std::sqrt(v * p.kappa * p.gamma_tot()));
        } else {
            set_path(doc, spec.axis, v);
        }
        docs.push_back(std::move(doc));
    }
    const bool paired = spec.paired && core::is_cavity(base.scenario.kind());

    const std::size_t n = docs.size();
    std::vector<double> final_w(n, NAN), final_fs(n, NAN), reached(n, NAN), rate(n, NAN), rate_fs(n, NAN),
        xi(n, NAN), mu(n, NAN), coop(n, NAN), ln_ratio(n, NAN), ln_linear(n, NAN), ln_quad(n, NAN),
        status(n, 1.0);
    SweepResult result;
    result.errors.assign(n, "");
    parallel_for(n, spec.workers, [&](std::size_t i) {
        try {
            const core::RunConfig cfg = core::parse_config(docs[i]);
            const auto& p = cfg.scenario.params();
            const double kv0 = cfg.initial.kv_mean;
            const auto pred = analytics::predict(cfg.scenario, kv0);
            xi[i] = pred.xi;
            mu[i] = pred.mu;
            const bool cavity = core::is_cavity(cfg.scenario.kind());
            coop[i] = cavity ? core::cooperativity(p) : 0.0;
            const double w_max = analytics::kSmallDopplerFraction * std::abs(p.delta_a);
            const RunOutcome r = run(cfg);
            final_w[i] = r.final_w;
            reached[i] = r.threshold_reached ? 1.0 : 0.0;
            if (core::is_closed(cfg.scenario.kind())) {
                const auto f = fit_rate(r.traj, w_max);
                if (f.ok) rate[i] = f.rate;
            }
            if (cavity && !core::is_closed(cfg.scenario.kind())) {
                const auto ei = analytics::final_velocity_exponent_integral(p, p.n_emitters);
                const double xi_over_mu = 4.0 * p.omega_rec * p.gamma_tot() * p.delta_a /
                                          (p.gamma_prime * (p.delta_a * p.delta_a + p.gamma_tot() * p.gamma_tot()));
                ln_linear[i] = -(ei.closed_form - xi_over_mu);
                ln_quad[i] = -(ei.quadrature - xi_over_mu);
            }
            if (paired) {
                const RunOutcome f = run(free_space_twin(cfg, cfg.integrator.t_end));
                final_fs[i] = f.final_w;
                ln_ratio[i] = std::log(r.final_w / f.final_w);
                if (core::is_closed(cfg.scenario.kind())) {
                    const auto fr = fit_rate(f.traj, w_max);
                    if (fr.ok) rate_fs[i] = fr.rate;
                }
            }
            status[i] = 0.0;
        } catch (const std::exception& e) {
            result.errors[i] = e.what();
        }
    });

    Table& t = result.table;
    t.add(spec.axis, spec.values);
    t.add("status", status);
    t.add("cooperativity", coop);
    t.add("final_w", final_w);
    t.add("threshold_reached", reached);
    t.add("fitted_rate", rate);
    t.add("xi_analytic", xi);
    t.add("mu_analytic", mu);
    if (paired) {
        t.add("final_w_free_space", final_fs);
        t.add("fitted_rate_free_space", rate_fs);
        t.add("ln_final_ratio", ln_ratio);
    }
    t.add("ln_ratio_linear", ln_linear);
    t.add("ln_ratio_quadrature", ln_quad);
    return result;
}

std::vector<fs::path> write_sweep(const SweepSpec& spec, const fs::path& out_dir) {
    const SweepResult r = run_sweep(spec);
    const fs::path csv = out_dir / (spec.base.name + "_sweep.csv");
    write_csv(csv, r.table);
    json errors = json::array();
    for (std::size_t i = 0; i < r.errors.size(); ++i)
        if (!r.errors[i].empty()) errors.push_back({{"value", spec.values[i]}, {"error", r.errors[i]}});
    json manifest{{"name", spec.base.name},
                  {"config", core::echo_config(core::parse_config(spec.base.config))},
                  {"axis", spec.axis},
                  {"values", spec.values},
                  {"paired", spec.paired},
                  {"errors", errors}};
    const fs::path man = out_dir / (spec.base.name + "_sweep.manifest.json");
    const std::vector<fs::path> artifacts{csv};
    write_manifest(man, manifest, artifacts);
    return {csv, man};
}

json rates_report(const core::RunConfig& cfg) {
    const auto& s = cfg.scenario;
    const auto& p = s.params();
    const double kv0 = cfg.initial.kv_mean;
    const auto pred = analytics::predict(s, kv0);
    json j{{"scenario", std::string(core::to_string(s.kind()))},
           {"kv0", kv0},
           {"abs_omega", std::abs(p.omega_drive)},
           {"xi", pred.xi},
           {"xi_free_space", analytics::xi_free_space(p)},
           {"mu_free_space", pred.mu},
           {"small_doppler_ok", pred.flags.small_doppler_ok},
           {"regime_i_ok", pred.flags.regime_i_ok}};
    if (core::is_cavity(s.kind())) {
        j["cooperativity"] = core::cooperativity(p);
        j["regime_parameter"] = analytics::regime_parameter(p);
        j["xi_cavity_single"] = analytics::xi_cavity_single(p);
        j["xi_cavity_many"] = analytics::xi_cavity_many(p);
    }
    if (!core::is_closed(s.kind())) {
        j["final_velocity_free_space"] = analytics::final_velocity_fs(p, kv0);
        if (core::is_cavity(s.kind())) {
            j["final_velocity_ratio_regime_i"] = analytics::final_velocity_ratio_cavity(p);
            const auto ei = analytics::final_velocity_exponent_integral(p, p.n_emitters);
            j["exponent_quadrature"] = ei.quadrature;
            j["exponent_error_estimate"] = ei.error_estimate;
            j["exponent_converged"] = ei.converged;
            j["exponent_closed_form"] = ei.closed_form;
        }
    }
    for (auto& [k, v] : j.items())
        if (v.is_number_float()) v = nan_safe(v.get<double>());
    return j;
}

}  // namespace purcell::experiments
