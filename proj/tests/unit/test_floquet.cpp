#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "purcell/core/params.hpp"
#include "purcell/floquet/floquet.hpp"
#include "purcell/floquet/oracle.hpp"

using namespace purcell;
using core::cx;
using floquet::Params;

namespace {

Params cavity(double g, double kappa, double delta, double eta = 132.0) {
    Params p;
    p.g = g;
    p.kappa = kappa;
    p.delta_a = delta;
    p.delta_c = delta;
    p.eta = eta;
    p.omega_drive = core::cavity_drive(g, eta, kappa, delta);
    p.omega_rec = 1.0;
    return p;
}

double rel(cx a, cx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("free-space coefficients") {
    Params p;
    p.omega_drive = cx(1.0, 0.0);
    p.delta_a = 10.0;
    const auto s0 = floquet::floquet_free_space(p, 0.0);
    const cx expect = -cx(0, 1) * p.omega_drive / (2.0 * cx(1.0, 10.0));
    CHECK(rel(s0.b_plus, expect) < 1e-15);
    CHECK(s0.b_plus == s0.b_minus);

    const auto a = floquet::floquet_free_space(p, 0.7);
    const auto b = floquet::floquet_free_space(p, -0.7);
    CHECK(a.b_plus == b.b_minus);
    CHECK(a.b_minus == b.b_plus);

    // expansion error is second order in kv
    double prev = 0.0;
    for (double kv = 1.0; kv > 0.1; kv /= 2.0) {
        const auto s = floquet::floquet_free_space(p, kv);
        const double err = std::abs(s.b_plus - (s.b0 + kv * s.b1));
        if (prev > 0.0) CHECK(err / prev == doctest::Approx(0.25).epsilon(0.05));
        prev = err;
    }
}

TEST_CASE("2x2 cavity coefficients") {
    const Params p = cavity(155.0, 1000.0, 200.0);
    const auto s = floquet::floquet_cavity_2x2(p, 3.0);
    CHECK(floquet::oracle::residual_2x2(p, 3.0, s) < 1e-12);
    CHECK(s.regime_ok);

    // the finite difference of the exact pair tends to b1
    double prev = 0.0;
    for (double kv = 2.0; kv > 0.2; kv /= 2.0) {
        const auto t = floquet::floquet_cavity_2x2(p, kv);
        const double err = std::abs((t.b_plus - t.b_minus) / (2.0 * kv) - t.b1);
        if (prev > 0.0) CHECK(err / prev < 0.3);
        prev = err;
    }

    // kv = 0 amplitude is reduced by the Purcell-broadened width
    const auto c0 = floquet::floquet_cavity_2x2(p, 0.0);
    const auto f0 = floquet::floquet_free_space(p, 0.0);
    const double c = core::cooperativity(p);
    const double factor = std::abs(cx(1.0, 200.0)) / std::abs(cx(1.0 + 3.0 * c / 4.0, 200.0));
    CHECK(std::abs(c0.b_plus) / std::abs(f0.b_plus) == doctest::Approx(factor).epsilon(1e-12));

    Params g0 = p;
    g0.g = 0.0;
    const auto z = floquet::floquet_cavity_2x2(g0, 1.5);
    const auto f = floquet::floquet_free_space(g0, 1.5);
    CHECK(z.b_plus == f.b_plus);
    CHECK(z.b_minus == f.b_minus);

    Params off = p;
    off.delta_c = 201.0;
    CHECK_THROWS_AS(floquet::floquet_cavity_2x2(off, 0.0), std::invalid_argument);
}

TEST_CASE("Toeplitz root properties on random draws") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double gamma = std::pow(10.0, -2.0 + 3.0 * u(rng));
        const double delta = (u(rng) - 0.5) * 2.0 * std::pow(10.0, -2.0 + 5.0 * u(rng));
        const double c = std::pow(10.0, -4.0 + 7.0 * u(rng));
        const cx zz{gamma, delta};
        const auto r = floquet::toeplitz_roots(zz, c);
        const cx a = zz + 2.0 * c;
        CHECK(std::abs(c * r.inner * r.inner + a * r.inner + c) / std::abs(a) < 1e-13);
        CHECK(std::abs(r.inner * r.outer - 1.0) < 1e-13);
        CHECK(std::abs(r.inner) < 1.0);
    }
    CHECK_THROWS_AS(floquet::toeplitz_roots(cx(0.0, 0.0), 1.0), std::domain_error);
}

TEST_CASE("all-order solution") {
    const Params p = cavity(155.0, 1000.0, 200.0);
    const cx lambda = floquet::toeplitz_lambda(p);
    const int order = floquet::default_truncation_order(lambda);
    CHECK(order % 2 == 1);
    CHECK(std::pow(std::abs(lambda), (order + 1) / 2) < 1e-12);
    CHECK(floquet::oracle::infinite_vs_dense(p, order) < 1e-10);

    const auto s = floquet::floquet_cavity_infinite(p, order);
    REQUIRE(s.higher.size() >= 2);
    CHECK(rel(s.higher[0], s.b0 * lambda) < 1e-13);
    for (std::size_t n = 1; n < s.higher.size(); ++n) CHECK(rel(s.higher[n], s.higher[n - 1] * lambda) < 1e-12);

    // weak coupling: all-order b1 approaches the truncated one
    const Params weak = cavity(std::sqrt(1e-3 * 1000.0), 1000.0, 2.0);
    const auto inf = floquet::floquet_cavity_infinite(weak, 31);
    const auto two = floquet::floquet_cavity_2x2(weak, 0.0);
    CHECK(rel(inf.b1, two.b1) < 1e-3);

    // vanishing coupling: lambda -> 0
    const Params tiny = cavity(1e-6, 1000.0, 2.0);
    CHECK(std::abs(floquet::toeplitz_lambda(tiny)) < 1e-14);
}

TEST_CASE("Sherman-Morrison many-emitter solution") {
    Params p = cavity(7.5, 375.0, 10.0, 50.0);
    const std::vector<double> one{0.4};
    const auto sm = floquet::floquet_many_sherman_morrison(p, one);
    const auto two = floquet::floquet_cavity_2x2(p, 0.4);
    CHECK(rel(sm[0].b_plus, two.b_plus) < 1e-14);
    CHECK(rel(sm[0].b_minus, two.b_minus) < 1e-14);

    std::mt19937_64 rng(11);
    std::normal_distribution<double> kv_dist(1.5, 0.3);
    for (int n : {2, 8, 64}) {
        std::vector<double> kv(n);
        for (auto& v : kv) v = kv_dist(rng);
        p.n_emitters = n;
        const auto sol = floquet::floquet_many_sherman_morrison(p, kv);
        CHECK(floquet::oracle::residual_many(p, kv, sol) < 1e-10);
        CHECK(floquet::oracle::sherman_morrison_vs_dense(p, kv) < 1e-10);

        std::vector<double> neg(kv);
        for (auto& v : neg) v = -v;
        const auto flipped = floquet::floquet_many_sherman_morrison(p, neg);
        for (int j = 0; j < n; ++j) {
            CHECK(rel(flipped[j].b_plus, sol[j].b_minus) < 1e-14);
            CHECK(rel(flipped[j].b_minus, sol[j].b_plus) < 1e-14);
        }
    }

    std::vector<double> same(5, 0.9);
    p.n_emitters = 5;
    const auto eq = floquet::floquet_many_sherman_morrison(p, same);
    for (const auto& s : eq) CHECK(s.b_plus == eq[0].b_plus);
}

TEST_CASE("adiabatic cavity amplitude") {
    Params p = cavity(7.5, 375.0, 10.0, 50.0);
    const cx empty = -p.eta / cx(p.kappa, p.delta_c);
    Params g0 = p;
    g0.g = 0.0;
    const auto s = floquet::floquet_many_sherman_morrison(g0, std::vector<double>{0.0});
    CHECK(rel(floquet::cavity_amplitude_adiabatic(g0, s), empty) < 1e-15);

    double prev = std::abs(empty);
    for (int n : {1, 10, 100, 400}) {
        p.n_emitters = n;
        const auto sol = floquet::floquet_many_sherman_morrison(p, std::vector<double>(n, 0.0));
        const double a = std::abs(floquet::cavity_amplitude_adiabatic(p, sol));
        CHECK(a < prev);
        prev = a;
    }
}

TEST_CASE("friction rate") {
    Params p;
    p.omega_drive = cx(1.0, 0.0);
    p.delta_a = 10.0;
    p.omega_rec = 0.5;
    const auto s = floquet::floquet_free_space(p, 0.0);
    const double xi = 4.0 * std::pow(std::abs(p.omega_drive), 2) * p.omega_rec * p.delta_a /
                      std::pow(1.0 + p.delta_a * p.delta_a, 2);
    CHECK(floquet::friction_rate(p, s) == doctest::Approx(xi).epsilon(1e-13));
}
