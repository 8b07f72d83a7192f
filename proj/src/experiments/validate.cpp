#include "purcell/experiments/validate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "purcell/analytics/rates.hpp"
#include "purcell/core/config.hpp"
#include "purcell/dynamics/population.hpp"
#include "purcell/dynamics/trajectory.hpp"
#include "purcell/floquet/floquet.hpp"
#include "purcell/floquet/oracle.hpp"

namespace purcell::experiments {

namespace {

using core::cx;
using core::Params;

Params cavity_params(double gamma, double gamma_prime, double g, double kappa, double delta, double eta) {
    Params p;
    p.gamma = gamma;
    p.gamma_prime = gamma_prime;
    p.g = g;
    p.kappa = kappa;
    p.delta_a = delta;
    p.delta_c = delta;
    p.eta = eta;
    p.omega_rec = 1.0;
    p.omega_drive = core::cavity_drive(g, eta, kappa, delta);
    return p;
}

// Parameter sets used by several checks.
std::vector<Params> reference_sets() {
    return {cavity_params(1.0, 0.0, 155.0, 1000.0, 200.0, 132.0),
            cavity_params(1.0, 0.0, std::sqrt(5.0), 10.0, 1.0, 0.6),
            cavity_params(0.85, 0.15, 155.0, 1000.0, 1.0, 0.9),
            cavity_params(0.7, 0.3, 7.5, 375.0, 10.0, 50.0),
            cavity_params(1.0, 0.0, 40.0, 100.0, -3.0, 5.0)};
}

struct Recorder {
    ValidationReport& report;

    void less(std::string name, double value, double threshold, std::string detail = {}) {
        report.checks.push_back({std::move(name), value, threshold, value < threshold, std::move(detail)});
    }
    void at_most(std::string name, double value, double threshold, std::string detail = {}) {
        report.checks.push_back({std::move(name), value, threshold, value <= threshold, std::move(detail)});
    }
};

double rel(cx a, cx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

bool ValidationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::uint64_t ulp_distance(double a, double b) {
    if (a == b) return 0;
    auto key = [](double x) {
        const auto u = std::bit_cast<std::uint64_t>(x);
        return (u & 0x8000000000000000ULL) ? ~u + 1 : u | 0x8000000000000000ULL;
    };
    const std::uint64_t ka = key(a), kb = key(b);
    return ka > kb ? ka - kb : kb - ka;
}

ValidationReport run_validate(const ValidateOptions& options) {
    ValidationReport report;
    Recorder rec{report};
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    auto log_uniform = [&](double lo, double hi) { return lo * std::pow(hi / lo, u01(rng)); };

    // Toeplitz root: residual, in-disk selection and root pairing on random draws.
    {
        double worst_residual = 0.0, worst_pair = 0.0, worst_modulus = 0.0;
        for (int i = 0; i < options.random_draws; ++i) {
            const double gamma = log_uniform(1e-2, 10.0);
            const double delta = (u01(rng) * 2.0 - 1.0) * 200.0;
            const double g = log_uniform(1e-2, 500.0);
            const double kappa = log_uniform(1e-1, 2000.0);
            const double c = g * g / (4.0 * kappa);
            const cx z{gamma, delta};
            const cx a = z + 2.0 * c;
            const auto roots = floquet::toeplitz_roots(z, c);
            const cx l = roots.inner;
            worst_residual = std::max(worst_residual, std::abs(c * l * l + a * l + c) / std::abs(a));
            worst_pair = std::max(worst_pair, std::abs(roots.inner * roots.outer - 1.0));
            worst_modulus = std::max(worst_modulus, std::abs(l));
        }
        rec.less("toeplitz root residual |c l^2 + a l + c| / |a|", worst_residual, 1e-13);
        rec.less("toeplitz root pairing |l1 l2 - 1|", worst_pair, 1e-13);
        rec.less("toeplitz in-disk root max |lambda|", worst_modulus, 1.0);
    }

    // Closed forms against their defining linear systems.
    {
        double worst_inf = 0.0, worst_2x2 = 0.0, worst_sm = 0.0, worst_sm_res = 0.0;
        int worst_order = 0;
        for (const Params& p : reference_sets()) {
            const int order = floquet::default_truncation_order(floquet::toeplitz_lambda(p));
            worst_order = std::max(worst_order, order);
            worst_inf = std::max(worst_inf, floquet::oracle::infinite_vs_dense(p, order));
            for (double kv : {0.0, 0.3, -2.0, 17.0})
                worst_2x2 = std::max(worst_2x2, floquet::oracle::residual_2x2(p, kv, floquet::floquet_cavity_2x2(p, kv)));
            for (int n : {1, 2, 3, 8, 16, 32, options.max_dense_emitters}) {
                std::vector<double> kv(static_cast<std::size_t>(n));
                for (auto& v : kv) v = (u01(rng) * 2.0 - 1.0) * 5.0;
                worst_sm = std::max(worst_sm, floquet::oracle::sherman_morrison_vs_dense(p, kv));
                const auto sol = floquet::floquet_many_sherman_morrison(p, kv);
                worst_sm_res = std::max(worst_sm_res, floquet::oracle::residual_many(p, kv, sol));
            }
        }
        rec.less("all-order closed form vs dense truncated solve", worst_inf, 1e-10,
                 "largest default order " + std::to_string(worst_order));
        rec.less("2x2 solution relative residual", worst_2x2, 1e-12);
        rec.less("Sherman-Morrison vs dense solve (N <= " + std::to_string(options.max_dense_emitters) + ")",
                 worst_sm, 1e-10);
        rec.less("Sherman-Morrison relative residual in the scaled system", worst_sm_res, 1e-10);
    }

    // Limit reductions, in ulp.
    {
        std::uint64_t many_vs_single = 0, c0_vs_free = 0, sm_vs_2x2 = 0, g0_vs_free = 0;
        for (int i = 0; i < 1000; ++i) {
            Params p = cavity_params(log_uniform(0.1, 5.0), 0.0, log_uniform(0.1, 300.0), log_uniform(1.0, 2000.0),
                                     (u01(rng) * 2.0 - 1.0) * 100.0, log_uniform(0.1, 200.0));
            p.omega_rec = log_uniform(1e-3, 5.0);
            p.n_emitters = 1;
            many_vs_single = std::max(many_vs_single,
                                      ulp_distance(analytics::xi_cavity_many(p), analytics::xi_cavity_single(p)));
            Params p0 = p;
            p0.g = 0.0;
            c0_vs_free = std::max(c0_vs_free, ulp_distance(analytics::xi_cavity_single(p0), analytics::xi_free_space(p0)));
            const double kv = (u01(rng) * 2.0 - 1.0) * 10.0;
            const auto a = floquet::floquet_cavity_2x2(p, kv);
            const double kvs[1] = {kv};
            const auto b = floquet::floquet_many_sherman_morrison(p, kvs).front();
            for (auto [x, y] : {std::pair{a.b_plus, b.b_plus}, std::pair{a.b_minus, b.b_minus}, std::pair{a.b0, b.b0},
                                std::pair{a.b1, b.b1}}) {
                sm_vs_2x2 = std::max({sm_vs_2x2, ulp_distance(x.real(), y.real()), ulp_distance(x.imag(), y.imag())});
            }
            const auto c0 = floquet::floquet_cavity_2x2(p0, kv);
            const auto fs = floquet::floquet_free_space(p0, kv);
            for (auto [x, y] : {std::pair{c0.b_plus, fs.b_plus}, std::pair{c0.b_minus, fs.b_minus},
                                std::pair{c0.b0, fs.b0}, std::pair{c0.b1, fs.b1}}) {
                g0_vs_free = std::max({g0_vs_free, ulp_distance(x.real(), y.real()), ulp_distance(x.imag(), y.imag())});
            }
        }
        rec.at_most("limit N = 1: collective rate equals single-emitter rate (ulp)", double(many_vs_single), 4.0);
        rec.at_most("limit C = 0: cavity rate equals free-space rate (ulp)", double(c0_vs_free), 4.0);
        rec.at_most("limit N = 1: Sherman-Morrison equals 2x2 coefficients (ulp)", double(sm_vs_2x2), 4.0);
        rec.at_most("limit g = 0: 2x2 coefficients equal free-space coefficients (ulp)", double(g0_vs_free), 4.0);
    }

    // Velocity parity: v -> -v swaps b_+ and b_- for every solver.
    {
        double worst = 0.0;
        for (int i = 0; i < options.random_draws; ++i) {
            const Params p = cavity_params(log_uniform(0.05, 5.0), 0.0, log_uniform(0.1, 300.0), log_uniform(1.0, 2000.0),
                                           (u01(rng) * 2.0 - 1.0) * 100.0, log_uniform(0.1, 200.0));
            const double kv = (u01(rng) * 2.0 - 1.0) * 20.0;
            const auto f1 = floquet::floquet_free_space(p, kv), f2 = floquet::floquet_free_space(p, -kv);
            const auto c1 = floquet::floquet_cavity_2x2(p, kv), c2 = floquet::floquet_cavity_2x2(p, -kv);
            std::vector<double> v{kv, -0.5 * kv, 0.25 * kv};
            std::vector<double> w{-kv, 0.5 * kv, -0.25 * kv};
            const auto m1 = floquet::floquet_many_sherman_morrison(p, v);
            const auto m2 = floquet::floquet_many_sherman_morrison(p, w);
            worst = std::max({worst, rel(f1.b_plus, f2.b_minus), rel(f1.b_minus, f2.b_plus), rel(c1.b_plus, c2.b_minus),
                              rel(c1.b_minus, c2.b_plus)});
            for (std::size_t j = 0; j < v.size(); ++j)
                worst = std::max({worst, rel(m1[j].b_plus, m2[j].b_minus), rel(m1[j].b_minus, m2[j].b_plus)});
        }
        rec.at_most("velocity parity b_+(v) = b_-(-v), " + std::to_string(options.random_draws) + " draws",
                    worst, 0.0);
    }

    // Doppler expansion: (b_+ - b_-) / (2 kv) -> b1 at first order.
    {
        Params p = cavity_params(1.0, 0.0, 155.0, 1000.0, 200.0, 132.0);
        double prev = 0.0, ratio = 0.0;
        for (double kv : {4.0, 2.0, 1.0}) {
            const auto s = floquet::floquet_cavity_2x2(p, kv);
            const double err = rel((s.b_plus - s.b_minus) / (2.0 * kv), s.b1);
            if (prev > 0.0) ratio = err / prev;
            prev = err;
        }
        rec.less("2x2 Doppler expansion error ratio under kv halving (second order: ~0.25)", ratio, 0.3);
    }

    // All-order b1 against the 2x2 value at small cooperativity.
    {
        const Params p = cavity_params(1.0, 0.0, std::sqrt(1e-3 * 1000.0), 1000.0, 10.0, 100.0);
        const auto inf = floquet::floquet_cavity_infinite(p, 5);
        const auto two = floquet::floquet_cavity_2x2(p, 0.0);
        rec.less("all-order b1 vs 2x2 b1 at C = 1e-3 (relative)", rel(inf.b1, two.b1), 1e-3);
    }

    // Final-velocity exponent: O(C^2) gap to the closed form, N-independence.
    {
        auto gap = [](double c) {
            Params p = cavity_params(0.85, 0.15, std::sqrt(c * 1000.0), 1000.0, 1.0, 1.0);
            p.omega_rec = 0.04;
            const auto e = analytics::final_velocity_exponent_integral(p, 1);
            return std::abs(e.quadrature - e.closed_form);
        };
        double worst_ratio = 0.0;
        double c = 0.4;
        double scaled_prev = gap(c) / (c * c);
        for (int k = 0; k < 6; ++k) {
            c *= 0.5;
            const double scaled = gap(c) / (c * c);
            worst_ratio = std::max(worst_ratio, std::abs(scaled / scaled_prev - 1.0));
            scaled_prev = scaled;
        }
        rec.less("exponent quadrature minus closed form scales as C^2 (relative drift of gap/C^2 per halving)",
                 worst_ratio, 0.15);

        double worst_n = 0.0, worst_err = 0.0;
        for (double cc : {0.1, 1.0, 10.0}) {
            Params p = cavity_params(0.85, 0.15, std::sqrt(cc * 1000.0), 1000.0, 1.0, 1.0);
            p.omega_rec = 0.04;
            const auto e1 = analytics::final_velocity_exponent_integral(p, 1);
            for (int n : {2, 400}) {
                const auto en = analytics::final_velocity_exponent_integral(p, n);
                worst_n = std::max(worst_n, std::abs(en.quadrature - e1.quadrature));
                worst_err = std::max(worst_err, en.error_estimate);
            }
            worst_err = std::max(worst_err, e1.error_estimate);
        }
        rec.less("exponent quadrature N-independence |I(N) - I(1)|", worst_n, 1e-10);
        rec.less("exponent quadrature error estimate", worst_err, analytics::kExponentAbsTol);
    }

    // Semi-analytic population equations.
    {
        Params p = cavity_params(0.85, 0.15, std::sqrt(1e-3 * 1000.0), 1000.0, 1.0, 1.0);
        double worst_small = 0.0;
        for (double n : {1.0, 0.5, 0.1, 0.01})
            worst_small = std::max(worst_small, std::abs(dynamics::ng_ode_infinite_order(p, n) /
                                                             dynamics::ng_ode_single(p, n) - 1.0));
        rec.less("all-order population loss vs truncated at C = 1e-3 (relative)", worst_small, 1e-4);
        double most_positive = -INFINITY;
        for (Params q : reference_sets()) {
            if (q.gamma_prime == 0.0) q.gamma_prime = 0.1;
            for (double n : {1.0, 0.3, 1e-2, 1e-4})
                most_positive = std::max(most_positive, dynamics::ng_ode_infinite_order_series(q, n));
        }
        rec.at_most("all-order population series is a loss (max value)", most_positive, 0.0);
    }

    // Population conservation on short non-closed runs.
    {
        double worst = 0.0;
        const char* docs[] = {
            R"({"params":{"gamma":0.85,"gamma_prime":0.15,"omega":1.0,"delta_a":2.0,"omega_rec":0.05},
                "scenario":{"kind":"FreeSpaceNonClosed"},"initial":{"kv0":1.0},"integrator":{"t_end":200}})",
            R"({"params":{"gamma":0.85,"gamma_prime":0.15,"g":20,"kappa":100,"delta_a":2.0,"eta":5,"omega_rec":0.05},
                "scenario":{"kind":"CavityNonClosed"},"initial":{"kv0":1.0},"integrator":{"t_end":100}})",
            R"({"params":{"gamma":0.7,"gamma_prime":0.3,"g":7.5,"kappa":375,"delta_a":10,"eta":50,"omega_rec":0.5,
                "n_emitters":8},"scenario":{"kind":"CavityNonClosedMany"},
                "initial":{"kv_mean":1.5,"kv_std":0.1},"integrator":{"t_end":50}})"};
        double abs_tol = 0.0;
        for (const char* d : docs) {
            const auto cfg = core::parse_config_text(d);
            abs_tol = cfg.integrator.abs_tol;
            const auto traj = dynamics::simulate(cfg);
            worst = std::max(worst, traj.max_population_drift);
        }
        rec.less("population-sum drift on non-closed runs", worst, 10.0 * abs_tol);
    }

    return report;
}

void print_report(const ValidationReport& report, std::ostream& out) {
    for (const auto& c : report.checks) {
        out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << std::setprecision(6) << c.value
            << " (threshold " << c.threshold << ")";
        if (!c.detail.empty()) out << " [" << c.detail << "]";
        out << "\n";
    }
    const auto failed = std::count_if(report.checks.begin(), report.checks.end(), [](const Check& c) { return !c.pass; });
    out << report.checks.size() - static_cast<std::size_t>(failed) << "/" << report.checks.size() << " checks passed\n";
}

}  // namespace purcell::experiments
