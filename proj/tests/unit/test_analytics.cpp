#include <doctest.h>

#include <cmath>
#include <vector>

#include "purcell/analytics/rates.hpp"
#include "purcell/core/params.hpp"
#include "purcell/dynamics/integrator.hpp"

using namespace purcell;
using analytics::Params;
using core::cx;

namespace {

Params fig2() {
    Params p;
    p.omega_drive = cx(1.0, 0.0);
    p.delta_a = 10.0;
    p.omega_rec = 0.5;
    return p;
}

Params resonant_cavity(double g, double kappa, double delta, double eta, double gamma = 1.0,
                       double gamma_prime = 0.0) {
    Params p;
    p.gamma = gamma;
    p.gamma_prime = gamma_prime;
    p.g = g;
    p.kappa = kappa;
    p.delta_a = delta;
    p.delta_c = delta;
    p.eta = eta;
    p.omega_drive = core::cavity_drive(g, eta, kappa, delta);
    p.omega_rec = 1.0;
    return p;
}

Params fig5(double delta = 1.0) {
    Params p;
    p.gamma = 0.85;
    p.gamma_prime = 0.15;
    p.delta_a = delta;
    p.omega_drive = cx(0.1 * std::sqrt(delta * delta + 1.0), 0.0);
    p.omega_rec = 0.04;
    p.kappa = 1000.0;
    p.delta_c = delta;
    return p;
}

}  // namespace

TEST_CASE("free-space cooling rate") {
    CHECK(analytics::xi_free_space(fig2()) == doctest::Approx(1.9606e-3).epsilon(1e-4));
    Params p = fig2();
    const double xi = analytics::xi_free_space(p);
    p.delta_a = -p.delta_a;
    CHECK(analytics::xi_free_space(p) == -xi);
    p.omega_drive = 0.0;
    CHECK(analytics::xi_free_space(p) == 0.0);
}

TEST_CASE("cavity rate limits and the 1 + C/2 enhancement") {
    Params p = resonant_cavity(155.0, 1000.0, 200.0, 132.0);
    const double c = core::cooperativity(p);
    CHECK(1.0 + c / 2.0 == doctest::Approx(13.0).epsilon(1e-3));
    const double ratio = analytics::xi_cavity_single(p) / analytics::xi_free_space(p);
    CHECK(std::abs(ratio / 13.0 - 1.0) < 0.01);

    Params q = p;
    q.g = 0.0;
    CHECK(analytics::xi_cavity_single(q) == analytics::xi_free_space(q));

    Params b = resonant_cavity(std::sqrt(5.0), 10.0, 1.0, 0.6);
    CHECK(analytics::xi_cavity_single(b) < analytics::xi_free_space(b));

    Params one = p;
    one.n_emitters = 1;
    CHECK(analytics::xi_cavity_many(one) == analytics::xi_cavity_single(one));
}

TEST_CASE("many-emitter rate decreases with the emitter number") {
    Params p = resonant_cavity(7.5, 375.0, 10.0, 50.0, 0.7, 0.3);
    p.n_emitters = 400;
    CHECK(analytics::xi_cavity_many(p) < analytics::xi_free_space(p));
    p.n_emitters = 1;
    double prev = analytics::xi_cavity_many(p);
    for (int n : {2, 10, 100, 400, 4000}) {
        p.n_emitters = n;
        const double xi = analytics::xi_cavity_many(p);
        CHECK(xi < prev);
        prev = xi;
    }
}

TEST_CASE("population loss rate") {
    Params p = resonant_cavity(155.0, 1000.0, 200.0, 132.0, 0.85, 0.15);
    CHECK(analytics::mu_free_space(p) == doctest::Approx(1.51e-3).epsilon(5e-3));
    Params closed = p;
    closed.gamma = 1.0;
    closed.gamma_prime = 0.0;
    CHECK(analytics::mu_free_space(closed) == 0.0);
    Params doubled = p;
    doubled.omega_drive *= 2.0;
    CHECK(analytics::mu_free_space(doubled) == doctest::Approx(4.0 * analytics::mu_free_space(p)).epsilon(1e-14));
}

TEST_CASE("rates are homogeneous under a change of rate unit") {
    Params p = resonant_cavity(155.0, 1000.0, 200.0, 132.0, 0.85, 0.15);
    Params s = p;
    const double k = 3.7;
    s.gamma *= k;
    s.gamma_prime *= k;
    s.g *= k;
    s.kappa *= k;
    s.delta_a *= k;
    s.delta_c *= k;
    s.eta *= k;
    s.omega_drive *= k;
    s.omega_rec *= k;
    CHECK(analytics::xi_free_space(s) == doctest::Approx(k * analytics::xi_free_space(p)).epsilon(1e-13));
    CHECK(analytics::xi_cavity_single(s) == doctest::Approx(k * analytics::xi_cavity_single(p)).epsilon(1e-13));
    CHECK(analytics::mu_free_space(s) == doctest::Approx(k * analytics::mu_free_space(p)).epsilon(1e-13));
}

TEST_CASE("velocity curves") {
    Params p = resonant_cavity(155.0, 1000.0, 200.0, 132.0, 0.85, 0.15);
    p.omega_rec = 2.5;
    CHECK(analytics::v_of_t_nonclosed_fs(p, 30.0, 0.0) == 30.0);
    CHECK(analytics::v_of_t_nonclosed_fs(p, 30.0, 1e7) ==
          doctest::Approx(analytics::final_velocity_fs(p, 30.0)).epsilon(1e-12));
    double prev = 30.0;
    for (double t = 100.0; t < 1e4; t += 100.0) {
        const double v = analytics::v_of_t_nonclosed_cavity_regime_i(p, 30.0, t);
        CHECK(v <= prev);
        prev = v;
    }
    const double c = core::cooperativity(p);
    const double xm = analytics::xi_free_space(p) / analytics::mu_free_space(p);
    CHECK(analytics::v_of_t_nonclosed_cavity_regime_i(p, 30.0, 1e8) ==
          doctest::Approx(30.0 * std::exp(-xm * (1.0 + c / 4.0))).epsilon(1e-12));
    CHECK(analytics::final_velocity_ratio_cavity(p) == doctest::Approx(std::exp(-xm * c / 4.0)));

    Params free = p;
    free.g = 0.0;
    for (double t : {0.0, 10.0, 1e3})
        CHECK(analytics::v_of_t_nonclosed_cavity_regime_i(free, 30.0, t) ==
              doctest::Approx(analytics::v_of_t_nonclosed_fs(free, 30.0, t)).epsilon(1e-14));

    Params closed = fig2();
    CHECK(analytics::v_of_t_nonclosed_fs(closed, 2.0, 100.0) ==
          doctest::Approx(2.0 * std::exp(-analytics::xi_free_space(closed) * 100.0)).epsilon(1e-14));
    CHECK(analytics::final_velocity_fs(closed, 2.0) == 0.0);
}

TEST_CASE("final free-space velocity") {
    const Params p = fig5();
    const double ratio = analytics::final_velocity_fs(p, 1.0);
    CHECK(std::log(ratio) == doctest::Approx(-0.5333333).epsilon(1e-6));
    CHECK(ratio == doctest::Approx(0.5866).epsilon(1e-4));

    // independent oracle: integrate dn/dt = -mu n, dv/dt = -xi n v
    const double xi = analytics::xi_free_space(p), mu = analytics::mu_free_space(p);
    std::vector<double> y{1.0, 1.0};
    dynamics::StepControls ctl;
    ctl.t_end = 40.0 / mu;
    ctl.rel_tol = 1e-11;
    ctl.abs_tol = 1e-14;
    dynamics::integrate_dopri5(
        [&](double, std::span<const double> x, std::span<double> d) {
            d[0] = -mu * x[0];
            d[1] = -xi * x[0] * x[1];
        },
        y, 0.0, ctl);
    CHECK(std::abs(y[1] / ratio - 1.0) < 0.01);

    Params still = p;
    still.omega_rec = 0.0;
    CHECK(analytics::final_velocity_fs(still, 0.7) == 0.7);

    // the minimum over the detuning sits at delta_a = gamma_tot
    double best = 0.0, best_v = 1e300;
    for (double d = 0.05; d < 5.0; d += 0.001) {
        Params q = p;
        q.delta_a = d;
        const double v = analytics::final_velocity_fs(q, 1.0);
        if (v < best_v) {
            best_v = v;
            best = d;
        }
    }
    CHECK(best == doctest::Approx(p.gamma_tot()).epsilon(2e-3));
}

TEST_CASE("final-velocity exponent integral") {
    Params p = fig5();
    auto with_c = [&](double c) {
        Params q = p;
        q.g = std::sqrt(c * q.kappa * q.gamma_tot());
        return q;
    };
    const double xm = analytics::xi_free_space(p) / analytics::mu_free_space(p);

    const auto small = analytics::final_velocity_exponent_integral(with_c(1e-9), 1);
    CHECK(small.converged);
    CHECK(small.quadrature == doctest::Approx(xm).epsilon(1e-7));
    CHECK(small.closed_form == doctest::Approx(xm).epsilon(1e-7));

    double prev = -1.0;
    for (double c = 0.05; c <= 1.0; c += 0.05) {
        const auto r = analytics::final_velocity_exponent_integral(with_c(c), 1);
        CHECK(r.converged);
        CHECK(r.quadrature >= 0.0);
        CHECK(r.quadrature > prev);
        prev = r.quadrature;
    }

    const auto one = analytics::final_velocity_exponent_integral(with_c(0.15), 1);
    const auto many = analytics::final_velocity_exponent_integral(with_c(0.15), 400);
    CHECK(std::abs(one.quadrature - many.quadrature) < 1e-10);

    // the gap between quadrature and leading order closes like C^2
    std::vector<double> ratios;
    for (double c = 0.08; c > 0.004; c /= 2.0) {
        const auto r = analytics::final_velocity_exponent_integral(with_c(c), 1);
        ratios.push_back((r.quadrature - r.closed_form) / (c * c));
    }
    for (std::size_t i = 1; i < ratios.size(); ++i)
        CHECK(std::abs(ratios[i] / ratios[i - 1] - 1.0) < 0.15);

    Params closed = p;
    closed.gamma = 1.0;
    closed.gamma_prime = 0.0;
    CHECK_THROWS(analytics::final_velocity_exponent_integral(closed, 1));
}

TEST_CASE("prediction flags") {
    Params p = resonant_cavity(155.0, 1000.0, 1.0, 0.9, 0.85, 0.15);
    const core::Scenario s(core::ScenarioKind::CavityNonClosed, p);
    const auto pred = analytics::predict(s, 0.2);
    CHECK_FALSE(pred.flags.regime_i_ok);
    CHECK(pred.flags.small_doppler_ok);
    CHECK(analytics::regime_parameter(s.params()) == doctest::Approx(24.025 / 4.0));
    CHECK_FALSE(analytics::predict(s, 1.0).flags.small_doppler_ok);
}
