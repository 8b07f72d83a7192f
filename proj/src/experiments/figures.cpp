#include "purcell/experiments/figures.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "purcell/analytics/rates.hpp"
#include "purcell/dynamics/population.hpp"

namespace purcell::experiments {

using nlohmann::json;

namespace {

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

core::RunConfig parse(const json& doc) { return core::parse_config(doc); }

dynamics::RateReport fit_band(const dynamics::Trajectory& traj, double w_min, double w_max) {
    dynamics::FitWindow w;
    w.w_min = w_min;
    w.w_max = w_max;
    return dynamics::fit_cooling_rate(traj, w);
}

json report_json(const dynamics::RateReport& r) {
    auto num = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
    return json{{"ok", r.ok},
                {"rate", num(r.rate)},
                {"amplitude", num(r.amplitude)},
                {"t_start", num(r.t_start)},
                {"t_end", num(r.t_end)},
                {"n_points", r.n_points},
                {"rms_residual", num(r.rms_residual)},
                {"message", r.message}};
}

json error_json(const SeriesError& e) {
    return json{{"linf", e.linf}, {"pointwise", e.pointwise}, {"points", e.points}};
}

json run_json(const RunOutcome& r) {
    const auto& s = r.traj.stats;
    json j{{"steps", s.steps},
           {"rejected", s.rejected},
           {"t_final", s.t_final},
           {"final_w", r.final_w},
           {"max_population_drift", r.traj.max_population_drift}};
    if (r.traj.ng_stop > 0.0) {
        j["ng_stop"] = r.traj.ng_stop;
        j["threshold_reached"] = r.threshold_reached;
    }
    return j;
}

Table trajectory_table(const dynamics::Trajectory& traj) {
    Table t;
    for (std::size_t c = 0; c < traj.columns.size(); ++c) t.add(traj.columns[c], traj.data[c]);
    return t;
}

Table envelope_table(const dynamics::Envelope& env, double w0, double xi) {
    Table t;
    std::vector<double> tt, ww, an;
    for (const auto& p : env.points) {
        tt.push_back(p.t);
        ww.push_back(p.w);
        an.push_back(w0 * std::exp(-xi * p.t));
    }
    t.add("t", tt);
    t.add("w_envelope", ww);
    t.add("w_analytic", an);
    return t;
}

double xi_over_mu(const core::Params& p) {
    const double gt = p.gamma_tot();
    return 4.0 * p.omega_rec * gt * p.delta_a / (p.gamma_prime * (p.delta_a * p.delta_a + gt * gt));
}

// Rows of a trajectory sampled on the stride grid (the final row may be an
// off-grid stop sample).
std::size_t grid_rows(const dynamics::Trajectory& traj, double stride) {
    const auto t = traj.times();
    std::size_t n = 0;
    while (n < t.size() && std::abs(t[n] - static_cast<double>(n) * stride) <= 1e-9 * (1.0 + t[n])) ++n;
    return n;
}

std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

}  // namespace

SeriesError compare_series(std::span<const double> sim, std::span<const double> ref) {
    SeriesError e;
    const std::size_t n = std::min(sim.size(), ref.size());
    double ref_max = 0.0, diff_max = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ref_max = std::max(ref_max, std::abs(ref[i]));
        diff_max = std::max(diff_max, std::abs(sim[i] - ref[i]));
        if (ref[i] != 0.0) e.pointwise = std::max(e.pointwise, std::abs(sim[i] / ref[i] - 1.0));
    }
    e.linf = ref_max > 0.0 ? diff_max / ref_max : diff_max;
    e.points = n;
    return e;
}

json fig2_config() {
    return json{{"params", {{"gamma", 1.0}, {"omega", 1.0}, {"delta_a", 10.0}, {"omega_rec", 0.5}}},
                {"scenario", {{"kind", "FreeSpaceClosed"}}},
                {"initial", {{"kv0", 18.0}, {"theta0", 0.0}}},
                {"integrator", {{"t_end", 3000.0}}},
                {"recording", {{"stride", 0.5}}}};
}

json fig3a_config() {
    return json{{"params",
                 {{"gamma", 1.0},
                  {"g", 155.0},
                  {"kappa", 1000.0},
                  {"delta_a", 200.0},
                  {"delta_c", 200.0},
                  {"eta", 132.0},
                  {"omega_rec", 1.0}}},
                {"scenario", {{"kind", "CavityClosed"}}},
                {"initial", {{"kv0", 30.0}, {"theta0", 0.0}}},
                {"integrator", {{"t_end", 600.0}}},
                {"recording", {{"stride", 0.5}, {"observables", {"w", "theta", "abs_beta", "abs_alpha", "arg_alpha"}}}}};
}

json fig3b_config() {
    return json{{"params",
                 {{"gamma", 1.0},
                  {"g", std::sqrt(5.0)},
                  {"kappa", 10.0},
                  {"delta_a", 1.0},
                  {"delta_c", 1.0},
                  {"eta", 0.6},
                  {"omega_rec", 0.02}}},
                {"scenario", {{"kind", "CavityClosed"}}},
                {"initial", {{"kv0", 0.2}, {"theta0", 0.0}}},
                {"integrator", {{"t_end", 3000.0}}},
                {"recording", {{"stride", 1.0}, {"observables", {"w", "theta", "abs_beta", "abs_alpha", "arg_alpha"}}}}};
}

json fig4ab_config() {
    return json{{"params",
                 {{"gamma", 0.85},
                  {"gamma_prime", 0.15},
                  {"g", 155.0},
                  {"kappa", 1000.0},
                  {"delta_a", 200.0},
                  {"delta_c", 200.0},
                  {"eta", 132.0},
                  {"omega_rec", 2.5}}},
                {"scenario", {{"kind", "CavityNonClosed"}}},
                {"initial", {{"kv0", 30.0}, {"theta0", 0.0}}},
                {"integrator", {{"t_end", 20000.0}, {"ng_stop", core::kFinalPopulationThreshold}}},
                {"recording", {{"stride", 2.0}, {"observables", {"w", "theta", "ng", "ne", "ni", "abs_alpha"}}}}};
}

json fig4cd_config() {
    return json{{"params",
                 {{"gamma", 0.85},
                  {"gamma_prime", 0.15},
                  {"g", 155.0},
                  {"kappa", 1000.0},
                  {"delta_a", 1.0},
                  {"delta_c", 1.0},
                  {"eta", 0.9},
                  {"omega_rec", 0.04}}},
                {"scenario", {{"kind", "CavityNonClosed"}}},
                {"initial", {{"kv0", 0.2}, {"theta0", 0.0}}},
                {"integrator", {{"t_end", 400000.0}, {"ng_stop", core::kFinalPopulationThreshold}}},
                {"recording", {{"stride", 20.0}, {"observables", {"w", "theta", "ng", "ne", "ni", "abs_alpha"}}}}};
}

json fig5_config(double c, double delta_a) {
    if (!(c > 0.0)) throw std::invalid_argument("fig5_config: cooperativity must be > 0");
    const double gamma = 0.85, gamma_prime = 0.15, kappa = 1000.0;
    const double gt = gamma + gamma_prime;
    const double g = std::sqrt(c * kappa * gt);
    const double eta = std::sqrt(0.01 * (delta_a * delta_a + gt * gt) * (kappa * kappa + delta_a * delta_a) / (g * g));
    return json{{"params",
                 {{"gamma", gamma},
                  {"gamma_prime", gamma_prime},
                  {"g", g},
                  {"kappa", kappa},
                  {"delta_a", delta_a},
                  {"delta_c", delta_a},
                  {"eta", eta},
                  {"omega_rec", 0.04}}},
                {"scenario", {{"kind", "CavityNonClosed"}}},
                {"initial", {{"kv0", 0.2 * delta_a}, {"theta0", 0.0}}},
                {"integrator", {{"t_end", 1.0e6}, {"ng_stop", core::kFinalPopulationThreshold}}},
                {"recording", {{"stride", 10.0}, {"observables", {"w", "ng"}}}}};
}

json fig7_config() {
    return json{{"params",
                 {{"gamma", 0.7},
                  {"gamma_prime", 0.3},
                  {"g", 7.5},
                  {"kappa", 375.0},
                  {"delta_a", 10.0},
                  {"delta_c", 10.0},
                  {"eta", 50.0},
                  {"omega_rec", 0.5},
                  {"n_emitters", 400}}},
                {"scenario", {{"kind", "CavityNonClosedMany"}}},
                {"initial", {{"kv_mean", 1.5}, {"kv_std", 0.1}, {"theta0", "uniform"}, {"seed", 12345}}},
                {"integrator", {{"t_end", 100000.0}, {"ng_stop", core::kFinalPopulationThreshold}}},
                {"recording", {{"stride", 5.0}, {"observables", {"mean_w", "std_w", "mean_ng", "abs_alpha"}}}}};
}

std::vector<double> fig5_default_cooperativities() { return {0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}; }

Fig2 compute_fig2() {
    Stopwatch clock;
    Fig2 f{.config = parse(fig2_config())};
    const auto& p = f.config.scenario.params();
    f.run = run(f.config);
    f.fit_w_max = analytics::kSmallDopplerFraction * p.delta_a;
    f.fit = fit_rate(f.run.traj, f.fit_w_max);
    f.xi_analytic = analytics::xi_free_space(p);
    const auto& env = f.run.traj.envelopes.front();
    f.first_zero_crossing = env.first_zero_crossing;
    f.max_trap_excursion = env.max_trap_excursion;
    f.seconds = clock.seconds();
    return f;
}

namespace {

RatePair rate_pair(const json& cavity_doc, double free_t_end, double w_min_fraction) {
    Stopwatch clock;
    const core::RunConfig cavity = parse(cavity_doc);
    RatePair r{.cavity_config = cavity, .free_config = free_space_twin(cavity, free_t_end)};
    const auto& p = r.cavity_config.scenario.params();
    r.cavity = run(r.cavity_config);
    r.free = run(r.free_config);
    const double kv0 = r.cavity_config.initial.kv_mean;
    r.fit_w_max = std::min(kv0, analytics::kSmallDopplerFraction * std::abs(p.delta_a));
    r.fit_w_min = w_min_fraction * kv0;
    r.fit_cavity = fit_band(r.cavity.traj, r.fit_w_min, r.fit_w_max);
    r.fit_free = fit_band(r.free.traj, r.fit_w_min, r.fit_w_max);
    r.fitted_ratio = r.fit_cavity.rate / r.fit_free.rate;
    r.analytic_ratio = analytics::xi_cavity_single(p) / analytics::xi_free_space(p);
    r.cooperativity = core::cooperativity(p);
    r.seconds = clock.seconds();
    return r;
}

}  // namespace

RatePair compute_fig3a() { return rate_pair(fig3a_config(), 6000.0, 0.4); }

RatePair compute_fig3b() { return rate_pair(fig3b_config(), 3000.0, 0.5); }

Fig4ab compute_fig4ab() {
    Stopwatch clock;
    const core::RunConfig cavity = parse(fig4ab_config());
    Fig4ab f{.cavity_config = cavity, .free_config = free_space_twin(cavity, cavity.integrator.t_end)};
    const auto& p = f.cavity_config.scenario.params();
    f.cavity = run(f.cavity_config);
    f.free = run(f.free_config);
    f.mu = analytics::mu_free_space(p);
    f.xi_free = analytics::xi_free_space(p);
    f.cooperativity = core::cooperativity(p);

    const auto t = f.cavity.traj.times();
    const auto ng = f.cavity.traj.column("ng_0");
    std::size_t end = 0;
    while (end < t.size() && ng[end] > 0.01) ++end;
    end = std::min(end + 1, t.size());  // include the first sample at or below 0.01
    f.t_ng_001 = t[end - 1];
    for (std::size_t i = 0; i < end; ++i) {
        f.t.push_back(t[i]);
        f.ng_sim.push_back(ng[i]);
        f.ng_exp.push_back(std::exp(-f.mu * t[i]));
    }
    const double kv0 = f.cavity_config.initial.kv_mean;
    for (const auto& pt : f.cavity.traj.envelopes.front().points) {
        if (pt.t > f.t_ng_001) break;
        f.env_t.push_back(pt.t);
        f.env_w.push_back(pt.w);
        f.v_regime_i.push_back(analytics::v_of_t_nonclosed_cavity_regime_i(p, kv0, pt.t));
    }
    f.ng_error = compare_series(f.ng_sim, f.ng_exp);
    f.v_error = compare_series(f.env_w, f.v_regime_i);
    f.seconds = clock.seconds();
    return f;
}

Fig4cd compute_fig4cd() {
    Stopwatch clock;
    const core::RunConfig cavity = parse(fig4cd_config());
    Fig4cd f{.cavity_config = cavity, .free_config = free_space_twin(cavity, cavity.integrator.t_end)};
    const auto& p = f.cavity_config.scenario.params();
    f.cavity = run(f.cavity_config);
    f.free = run(f.free_config);

    const double stride = f.cavity_config.recording.stride;
    const std::size_t common =
        std::min(grid_rows(f.cavity.traj, stride), grid_rows(f.free.traj, stride));
    const auto tc = f.cavity.traj.times();
    const auto ngc = f.cavity.traj.column("ng_0");
    const auto ngf = f.free.traj.column("ng_0");
    f.min_ng_gap = INFINITY;
    for (std::size_t i = 0; i < common; ++i) {
        f.t.push_back(tc[i]);
        f.ng_cavity.push_back(ngc[i]);
        f.ng_free.push_back(ngf[i]);
        if (tc[i] > 0.0) f.min_ng_gap = std::min(f.min_ng_gap, ngc[i] - ngf[i]);
    }
    // Past the free-space stop its population stays below the threshold while
    // the cavity population is still above it.
    for (std::size_t i = common; i < tc.size(); ++i)
        f.min_ng_gap = std::min(f.min_ng_gap, ngc[i] - f.free.traj.final_state.emitters.front().n_g);

    f.t_cavity = to_vector(tc);
    f.ng_cavity_full = to_vector(ngc);
    f.ng_single = dynamics::solve_population([&](double n) { return dynamics::ng_ode_single(p, n); }, 1.0,
                                             f.t_cavity);
    f.ng_infinite = dynamics::solve_population(
        [&](double n) { return dynamics::ng_ode_infinite_order(p, n); }, 1.0, f.t_cavity);
    f.single_error = compare_series(f.ng_cavity_full, f.ng_single);
    f.infinite_error = compare_series(f.ng_cavity_full, f.ng_infinite);
    f.final_cavity = f.cavity.final_w;
    f.final_free = f.free.final_w;
    f.seconds = clock.seconds();
    return f;
}

Fig5 compute_fig5(const std::vector<double>& cooperativities, double delta_a, unsigned workers) {
    Stopwatch clock;
    Fig5 f;
    f.delta_a = delta_a;
    f.points.resize(cooperativities.size());
    std::vector<double> cavity_drift(cooperativities.size()), free_drift(cooperativities.size());
    // Each cooperativity contributes a cavity job and a free-space job.
    parallel_for(2 * cooperativities.size(), workers, [&](std::size_t job) {
        const std::size_t i = job / 2;
        const core::RunConfig cfg = parse(fig5_config(cooperativities[i], delta_a));
        Fig5Point& pt = f.points[i];
        dynamics::SimulationOptions opt;
        opt.envelope_emitters = 0;
        if (job % 2 == 0) {
            const RunOutcome r = run(cfg, opt);
            pt.final_cavity = r.final_w;
            pt.cavity_reached = r.threshold_reached;
            pt.t_cavity = r.traj.stats.t_final;
            cavity_drift[i] = r.traj.max_population_drift;
        } else {
            const RunOutcome r = run(free_space_twin(cfg, cfg.integrator.t_end), opt);
            pt.final_free = r.final_w;
            pt.free_reached = r.threshold_reached;
            free_drift[i] = r.traj.max_population_drift;
        }
    });
    for (std::size_t i = 0; i < cooperativities.size(); ++i) {
        const core::RunConfig cfg = parse(fig5_config(cooperativities[i], delta_a));
        const auto& p = cfg.scenario.params();
        Fig5Point& pt = f.points[i];
        const double xm = xi_over_mu(p);
        const double gt = p.gamma_tot();
        const double c = core::cooperativity(p);
        f.xi_over_mu = xm;
        pt.cooperativity = c;
        pt.max_population_drift = std::max(cavity_drift[i], free_drift[i]);
        pt.ln_ratio = std::log(pt.final_cavity / pt.final_free);
        pt.ln_linear = -xm * (c / 4.0) * p.delta_a * p.delta_a / (p.delta_a * p.delta_a + gt * gt);
        pt.ln_regime_i = -xm * c / 4.0;
        pt.ln_quadrature = -(analytics::final_velocity_exponent_integral(p, 1).quadrature - xm);
        pt.relative_to_linear = pt.ln_ratio / pt.ln_linear - 1.0;
    }
    f.seconds = clock.seconds();
    return f;
}

Fig7 compute_fig7(unsigned workers) {
    Stopwatch clock;
    Fig7 f{.config = parse(fig7_config())};
    const auto& p = f.config.scenario.params();
    dynamics::SimulationOptions opt;
    opt.envelope_emitters = 0;
    {
        Stopwatch cav_clock;
        f.cavity = run(f.config, opt);
        f.cavity_seconds = cav_clock.seconds();
    }
    f.free = run_free_space_ensemble(f.config, f.config.integrator.t_end, workers);
    f.t = to_vector(f.cavity.traj.times());
    f.mean_ng = to_vector(f.cavity.traj.column("mean_ng"));
    f.ng_semi = dynamics::solve_population([&](double n) { return dynamics::ng_ode_many(p, n); }, 1.0, f.t);
    f.ng_error = compare_series(f.mean_ng, f.ng_semi);
    f.final_cavity = f.cavity.final_w;
    f.final_free = f.free.final_mean_w;
    f.relative_gap = std::abs(f.final_cavity - f.final_free) / std::abs(f.final_free);
    f.xi_cavity_many = analytics::xi_cavity_many(p);
    f.xi_free = analytics::xi_free_space(p);
    f.seconds = clock.seconds();
    return f;
}

std::vector<std::string> figure_names() { return {"fig2", "fig3a", "fig3b", "fig4ab", "fig4cd", "fig5", "fig7"}; }

namespace {

std::vector<fs::path> finish(const fs::path& dir, const std::string& name, json manifest,
                             const std::vector<std::pair<std::string, Table>>& tables) {
    std::vector<fs::path> files;
    for (const auto& [file, table] : tables) {
        files.push_back(dir / file);
        write_csv(files.back(), table);
    }
    manifest["figure"] = name;
    const fs::path man = dir / "manifest.json";
    write_manifest(man, std::move(manifest), files);
    files.push_back(man);
    return files;
}

std::vector<fs::path> write_rate_pair(const fs::path& dir, const std::string& name, const RatePair& r,
                                      const char* note) {
    const auto& pc = r.cavity_config.scenario.params();
    const double kv0 = r.cavity_config.initial.kv_mean;
    json m{{"configs", {{"cavity", core::echo_config(r.cavity_config)}, {"free_space", core::echo_config(r.free_config)}}},
           {"runs", {{"cavity", run_json(r.cavity)}, {"free_space", run_json(r.free)}}},
           {"fit_window", {{"w_min", r.fit_w_min}, {"w_max", r.fit_w_max}}},
           {"fit_cavity", report_json(r.fit_cavity)},
           {"fit_free_space", report_json(r.fit_free)},
           {"fitted_ratio", r.fitted_ratio},
           {"analytic_ratio", r.analytic_ratio},
           {"one_plus_half_cooperativity", 1.0 + r.cooperativity / 2.0},
           {"cooperativity", r.cooperativity},
           {"rates", rates_report(r.cavity_config)},
           {"seconds", r.seconds}};
    if (note) m["note"] = note;
    return finish(dir, name, m,
                  {{"cavity.csv", trajectory_table(r.cavity.traj)},
                   {"free_space.csv", trajectory_table(r.free.traj)},
                   {"envelope_cavity.csv",
                    envelope_table(r.cavity.traj.envelopes.front(), kv0, analytics::xi_cavity_single(pc))},
                   {"envelope_free_space.csv",
                    envelope_table(r.free.traj.envelopes.front(), kv0, analytics::xi_free_space(pc))}});
}

}  // namespace

std::vector<fs::path> run_figure(const std::string& name, const fs::path& out_dir, unsigned workers) {
    const fs::path dir = out_dir / name;
    if (name == "fig2") {
        const Fig2 f = compute_fig2();
        const double kv0 = f.config.initial.kv_mean;
        json m{{"config", core::echo_config(f.config)},
               {"run", run_json(f.run)},
               {"fit", report_json(f.fit)},
               {"fit_w_max", f.fit_w_max},
               {"xi_analytic", f.xi_analytic},
               {"first_zero_crossing", f.first_zero_crossing},
               {"max_trap_excursion", f.max_trap_excursion},
               {"seconds", f.seconds}};
        return finish(dir, name, m,
                      {{"trajectory.csv", trajectory_table(f.run.traj)},
                       {"envelope.csv", envelope_table(f.run.traj.envelopes.front(), kv0, f.xi_analytic)}});
    }
    if (name == "fig3a")
        return write_rate_pair(dir, name, compute_fig3a(),
                               "eta = 132 approximates the value quoted for this parameter set");
    if (name == "fig3b") return write_rate_pair(dir, name, compute_fig3b(), nullptr);
    if (name == "fig4ab") {
        const Fig4ab f = compute_fig4ab();
        const auto& p = f.free_config.scenario.params();
        const double kv0 = f.cavity_config.initial.kv_mean;
        Table ng, vel, vfree;
        ng.add("t", f.t);
        ng.add("ng_cavity", f.ng_sim);
        ng.add("ng_exp_mu_t", f.ng_exp);
        vel.add("t", f.env_t);
        vel.add("w_envelope", f.env_w);
        vel.add("w_regime_i", f.v_regime_i);
        std::vector<double> ft, fw, fa;
        for (const auto& pt : f.free.traj.envelopes.front().points) {
            ft.push_back(pt.t);
            fw.push_back(pt.w);
            fa.push_back(analytics::v_of_t_nonclosed_fs(p, kv0, pt.t));
        }
        vfree.add("t", ft);
        vfree.add("w_envelope", fw);
        vfree.add("w_free_space_analytic", fa);
        json m{{"configs", {{"cavity", core::echo_config(f.cavity_config)}, {"free_space", core::echo_config(f.free_config)}}},
               {"runs", {{"cavity", run_json(f.cavity)}, {"free_space", run_json(f.free)}}},
               {"mu", f.mu},
               {"xi_free_space", f.xi_free},
               {"cooperativity", f.cooperativity},
               {"t_ng_001", f.t_ng_001},
               {"ng_error", error_json(f.ng_error)},
               {"v_error", error_json(f.v_error)},
               {"note", "eta = 132 approximates the value quoted for this parameter set"},
               {"seconds", f.seconds}};
        return finish(dir, name, m,
                      {{"cavity.csv", trajectory_table(f.cavity.traj)},
                       {"free_space.csv", trajectory_table(f.free.traj)},
                       {"population.csv", ng},
                       {"velocity_cavity.csv", vel},
                       {"velocity_free_space.csv", vfree}});
    }
    if (name == "fig4cd") {
        const Fig4cd f = compute_fig4cd();
        Table ng, semi;
        ng.add("t", f.t);
        ng.add("ng_cavity", f.ng_cavity);
        ng.add("ng_free_space", f.ng_free);
        semi.add("t", f.t_cavity);
        semi.add("ng_cavity", f.ng_cavity_full);
        semi.add("ng_truncated", f.ng_single);
        semi.add("ng_all_orders", f.ng_infinite);
        json m{{"configs", {{"cavity", core::echo_config(f.cavity_config)}, {"free_space", core::echo_config(f.free_config)}}},
               {"runs", {{"cavity", run_json(f.cavity)}, {"free_space", run_json(f.free)}}},
               {"min_ng_gap", f.min_ng_gap},
               {"final_cavity", f.final_cavity},
               {"final_free_space", f.final_free},
               {"truncated_error", error_json(f.single_error)},
               {"all_orders_error", error_json(f.infinite_error)},
               {"seconds", f.seconds}};
        return finish(dir, name, m,
                      {{"cavity.csv", trajectory_table(f.cavity.traj)},
                       {"free_space.csv", trajectory_table(f.free.traj)},
                       {"population_comparison.csv", ng},
                       {"population_semi_analytic.csv", semi}});
    }
    if (name == "fig5") {
        const auto cs = fig5_default_cooperativities();
        const Fig5 f = compute_fig5(cs, 1.0, workers);
        Table t;
        std::vector<double> c, vc, vf, lr, ll, li, lq, ok, drift;
        for (const auto& pt : f.points) {
            c.push_back(pt.cooperativity);
            vc.push_back(pt.final_cavity);
            vf.push_back(pt.final_free);
            lr.push_back(pt.ln_ratio);
            ll.push_back(pt.ln_linear);
            li.push_back(pt.ln_regime_i);
            lq.push_back(pt.ln_quadrature);
            ok.push_back(pt.cavity_reached && pt.free_reached ? 1.0 : 0.0);
            drift.push_back(pt.max_population_drift);
        }
        t.add("cooperativity", c);
        t.add("final_w_cavity", vc);
        t.add("final_w_free_space", vf);
        t.add("ln_ratio", lr);
        t.add("ln_ratio_linear", ll);
        t.add("ln_ratio_regime_i", li);
        t.add("ln_ratio_quadrature", lq);
        t.add("threshold_reached", ok);
        t.add("max_population_drift", drift);
        json configs = json::array();
        for (double x : cs) configs.push_back(core::echo_config(parse(fig5_config(x, 1.0))));
        json m{{"configs", configs},
               {"xi_over_mu", f.xi_over_mu},
               {"delta_a", f.delta_a},
               {"eta_rule", "eta = sqrt(0.01 (delta_a^2 + gamma_tot^2)(kappa^2 + delta_c^2) / g^2)"},
               {"seconds", f.seconds}};
        return finish(dir, name, m, {{"scan.csv", t}});
    }
    if (name == "fig7") {
        const Fig7 f = compute_fig7(workers);
        Table cav = trajectory_table(f.cavity.traj);
        cav.add("ng_semi_analytic", f.ng_semi);
        Table fr;
        fr.add("t", f.free.t);
        fr.add("mean_w", f.free.mean_w);
        fr.add("std_w", f.free.std_w);
        fr.add("mean_ng", f.free.mean_ng);
        json m{{"config", core::echo_config(f.config)},
               {"run", run_json(f.cavity)},
               {"final_mean_w_cavity", f.final_cavity},
               {"final_mean_w_free_space", f.final_free},
               {"relative_gap", f.relative_gap},
               {"free_space_max_population_drift", f.free.max_population_drift},
               {"ng_error", error_json(f.ng_error)},
               {"xi_cavity_many", f.xi_cavity_many},
               {"xi_free_space", f.xi_free},
               {"cavity_seconds", f.cavity_seconds},
               {"seconds", f.seconds}};
        return finish(dir, name, m, {{"cavity_ensemble.csv", cav}, {"free_space_ensemble.csv", fr}});
    }
    throw std::invalid_argument("unknown figure '" + name + "'");
}

}  // namespace purcell::experiments
