#pragma once

// Built-in parameter sets of the reference figures, the computations behind
// them, and their artifacts (CSV tables plus a JSON manifest per figure).
//
// The compute_* functions return the simulated series together with the
// analytic overlays and the comparison metrics, so the acceptance suite and
// the `figure` command share one code path.

#include <string>
#include <vector>

#include <json.hpp>

#include "purcell/core/config.hpp"
#include "purcell/dynamics/fit.hpp"
#include "purcell/experiments/output.hpp"
#include "purcell/experiments/runner.hpp"

namespace purcell::experiments {

/// Configuration documents of the built-in runs.
nlohmann::json fig2_config();
nlohmann::json fig3a_config();
nlohmann::json fig3b_config();
nlohmann::json fig4ab_config();
nlohmann::json fig4cd_config();
/// Cavity run of the cooperativity scan at cooperativity `c`.
nlohmann::json fig5_config(double c, double delta_a = 1.0);
nlohmann::json fig7_config();

/// Default cooperativities of the scan.
std::vector<double> fig5_default_cooperativities();

struct Fig2 {
    core::RunConfig config;
    RunOutcome run;
    dynamics::RateReport fit;    // |w| <= 0.3 delta_a, before the first zero crossing
    double xi_analytic = 0.0;
    double fit_w_max = 0.0;
    double first_zero_crossing = 0.0;
    double max_trap_excursion = 0.0;  // |theta - trap center| after the crossing
    double seconds = 0.0;
};
Fig2 compute_fig2();

/// Cavity run and its free-space twin with fitted envelope decay rates.
struct RatePair {
    core::RunConfig cavity_config;
    core::RunConfig free_config;
    RunOutcome cavity;
    RunOutcome free;
    dynamics::RateReport fit_cavity;
    dynamics::RateReport fit_free;
    double fit_w_min = 0.0;
    double fit_w_max = 0.0;
    double fitted_ratio = 0.0;
    double analytic_ratio = 0.0;    // xi_cavity_single / xi_free_space
    double cooperativity = 0.0;
    double seconds = 0.0;
};
RatePair compute_fig3a();
RatePair compute_fig3b();

/// Comparison of a simulated series against a reference on the same times:
/// linf = max|sim - ref| / max|ref|; pointwise = max |sim/ref - 1|.
struct SeriesError {
    double linf = 0.0;
    double pointwise = 0.0;
    std::size_t points = 0;
};
SeriesError compare_series(std::span<const double> sim, std::span<const double> ref);

struct Fig4ab {
    core::RunConfig cavity_config;
    core::RunConfig free_config;
    RunOutcome cavity;
    RunOutcome free;
    double mu = 0.0;
    double xi_free = 0.0;
    double cooperativity = 0.0;
    double t_ng_001 = 0.0;            // first sample with simulated n_g <= 0.01
    std::vector<double> t;            // cavity samples up to t_ng_001
    std::vector<double> ng_sim;
    std::vector<double> ng_exp;       // exp(-mu t)
    std::vector<double> env_t;        // envelope points up to t_ng_001
    std::vector<double> env_w;
    std::vector<double> v_regime_i;   // regime-i velocity at env_t
    SeriesError ng_error;
    SeriesError v_error;
    double seconds = 0.0;
};
Fig4ab compute_fig4ab();

struct Fig4cd {
    core::RunConfig cavity_config;
    core::RunConfig free_config;
    RunOutcome cavity;
    RunOutcome free;
    std::vector<double> t;              // common sample times (free-space span)
    std::vector<double> ng_cavity;
    std::vector<double> ng_free;
    double min_ng_gap = 0.0;            // min(ng_cavity - ng_free) over t > 0
    std::vector<double> t_cavity;       // full cavity sample times
    std::vector<double> ng_cavity_full;
    std::vector<double> ng_single;      // truncated semi-analytic n_g
    std::vector<double> ng_infinite;    // all-order semi-analytic n_g
    SeriesError single_error;
    SeriesError infinite_error;
    double final_cavity = 0.0;
    double final_free = 0.0;
    double seconds = 0.0;
};
Fig4cd compute_fig4cd();

struct Fig5Point {
    double cooperativity = 0.0;
    double final_cavity = 0.0;
    double final_free = 0.0;
    double ln_ratio = 0.0;          // ln(v_cavity / v_free)
    double ln_linear = 0.0;         // -(xi/mu)(C/4) delta^2 / (delta^2 + gamma_tot^2)
    double ln_regime_i = 0.0;       // -(xi/mu) C/4
    double ln_quadrature = 0.0;     // from the exact exponent integral
    double relative_to_linear = 0.0;  // ln_ratio / ln_linear - 1
    bool cavity_reached = false;
    bool free_reached = false;
    double t_cavity = 0.0;
    double max_population_drift = 0.0;  // over both runs
};
struct Fig5 {
    double delta_a = 1.0;
    double xi_over_mu = 0.0;
    std::vector<Fig5Point> points;
    double seconds = 0.0;
};
Fig5 compute_fig5(const std::vector<double>& cooperativities, double delta_a = 1.0, unsigned workers = 0);

struct Fig7 {
    core::RunConfig config;
    RunOutcome cavity;
    EnsembleOutcome free;
    std::vector<double> t;          // cavity sample times
    std::vector<double> mean_ng;
    std::vector<double> ng_semi;    // collective semi-analytic n_g
    SeriesError ng_error;
    double final_cavity = 0.0;      // ensemble mean at the threshold
    double final_free = 0.0;
    double relative_gap = 0.0;      // |cavity - free| / free
    double xi_cavity_many = 0.0;
    double xi_free = 0.0;
    double cavity_seconds = 0.0;
    double seconds = 0.0;
};
Fig7 compute_fig7(unsigned workers = 0);

std::vector<std::string> figure_names();

/// Computes the named figure and writes its artifacts under out_dir/name.
/// Throws std::invalid_argument for unknown names.
std::vector<fs::path> run_figure(const std::string& name, const fs::path& out_dir, unsigned workers = 0);

}  // namespace purcell::experiments
