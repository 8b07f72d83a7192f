#include "purcell/analytics/rates.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace purcell::analytics {

namespace {

double sq(double x) { return x * x; }

double omega_sq(const Params& p) { return std::norm(p.omega_drive); }

// Cooperativity that tolerates free-space parameter sets (kappa == 0 -> C = 0).
double coop_or_zero(const Params& p) {
    return p.kappa > 0.0 ? core::cooperativity(p) : 0.0;
}

// Cooling rate with Purcell factors: widths gamma (1 + C/4) and
// gamma (1 + C m / 4), numerator factor (1 + C/2). m = 3 is the single
// emitter, m = 2N + 1 the ensemble.
double xi_widths(const Params& p, double c, double m) {
    const double gt = p.gamma_tot();
    const double d2 = sq(p.delta_a);
    const double num = 4.0 * omega_sq(p) * p.omega_rec * p.delta_a * gt * (1.0 + c / 2.0);
    return num / ((d2 + sq(gt * (1.0 + c / 4.0))) * (d2 + sq(gt * (1.0 + c * m / 4.0))));
}

}  // namespace

double xi_free_space(const Params& p) {
    const double gt = p.gamma_tot();
    return 4.0 * omega_sq(p) * p.omega_rec * p.delta_a * gt / sq(sq(gt) + sq(p.delta_a));
}

double xi_cavity_single(const Params& p) { return xi_widths(p, coop_or_zero(p), 3.0); }

double xi_cavity_many(const Params& p) {
    return xi_widths(p, coop_or_zero(p), 2.0 * p.n_emitters + 1.0);
}

double mu_free_space(const Params& p) {
    return p.gamma_prime * omega_sq(p) / (sq(p.delta_a) + sq(p.gamma_tot()));
}

double regime_parameter(const Params& p) {
    return p.gamma_tot() * coop_or_zero(p) / (4.0 * std::abs(p.delta_a));
}

RatePrediction predict(const core::Scenario& s, double kv) {
    const Params& p = s.params();
    RatePrediction r;
    switch (s.kind()) {
        case core::ScenarioKind::FreeSpaceClosed:
        case core::ScenarioKind::FreeSpaceNonClosed:
            r.xi = xi_free_space(p);
            break;
        case core::ScenarioKind::CavityClosed:
        case core::ScenarioKind::CavityNonClosed:
            r.xi = xi_cavity_single(p);
            break;
        case core::ScenarioKind::CavityClosedMany:
        case core::ScenarioKind::CavityNonClosedMany:
            r.xi = xi_cavity_many(p);
            break;
    }
    r.mu = mu_free_space(p);
    r.flags.small_doppler_ok = std::abs(kv) <= kSmallDopplerFraction * std::abs(p.delta_a);
    r.flags.regime_i_ok = !core::is_cavity(s.kind()) || regime_parameter(p) < 1.0;
    return r;
}

double v_of_t_nonclosed_fs(const Params& p, double v0, double t) {
    const double xi = xi_free_space(p);
    const double mu = mu_free_space(p);
    if (mu == 0.0) return v0 * std::exp(-xi * t);
    return v0 * std::exp(xi / mu * std::expm1(-mu * t));
}

double final_velocity_fs(const Params& p, double v0) {
    if (p.gamma_prime == 0.0) return 0.0;
    const double gt = p.gamma_tot();
    return v0 * std::exp(-4.0 * p.omega_rec * gt * p.delta_a /
                         (p.gamma_prime * (sq(p.delta_a) + sq(gt))));
}

double v_of_t_nonclosed_cavity_regime_i(const Params& p, double v0, double t) {
    const double xi = xi_free_space(p);
    const double mu = mu_free_space(p);
    const double c = coop_or_zero(p);
    if (mu == 0.0) return v0 * std::exp(-xi * (1.0 + c / 2.0) * t);
    return v0 * std::exp(xi / mu * (std::expm1(-mu * t) + c / 4.0 * std::expm1(-2.0 * mu * t)));
}

double final_velocity_ratio_cavity(const Params& p) {
    const double mu = mu_free_space(p);
    if (mu == 0.0) return 0.0;
    return std::exp(-xi_free_space(p) / mu * coop_or_zero(p) / 4.0);
}

ExponentIntegral final_velocity_exponent_integral(const Params& p, int n_emitters) {
    if (!(p.gamma_prime > 0.0))
        throw std::invalid_argument("final_velocity_exponent_integral: needs gamma' > 0");
    if (n_emitters < 1) throw std::invalid_argument("final_velocity_exponent_integral: n_emitters >= 1");
    const double gt = p.gamma_tot();
    const double c = core::cooperativity(p);
    const double d2 = sq(p.delta_a);
    const double om2 = omega_sq(p);
    const double collective = 2.0 * n_emitters + 1.0;

    // Rate of cooling and rate of population loss at ground population n,
    // each with its own collective width; dt = dn / |dn/dt|.
    auto integrand = [&](double n) {
        const double single_width = d2 + sq(gt * (1.0 + c * n / 4.0));
        const double coll_width = d2 + sq(gt * (1.0 + collective * c * n / 4.0));
        const double xi = 4.0 * om2 * n * p.omega_rec * p.delta_a * gt * (1.0 + c * n / 2.0) /
                          (single_width * coll_width);
        const double loss = p.gamma_prime * om2 * n / coll_width;
        return xi / loss;
    };

    ExponentIntegral out;
    double l1 = 0.0;
    out.quadrature = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, 0.0, 1.0, 20, 1e-14, &out.error_estimate, &l1);
    out.converged = out.error_estimate <= kExponentAbsTol;

    const double xi_over_mu = 4.0 * p.omega_rec * gt * p.delta_a / (p.gamma_prime * (d2 + sq(gt)));
    out.closed_form = xi_over_mu * (1.0 + c * d2 / (4.0 * (d2 + sq(gt))));
    return out;
}

}  // namespace purcell::analytics
