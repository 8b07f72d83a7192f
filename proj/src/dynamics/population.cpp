#include "purcell/dynamics/population.hpp"

#include <cmath>
#include <stdexcept>

#include "purcell/dynamics/integrator.hpp"
#include "purcell/floquet/floquet.hpp"

namespace purcell::dynamics {

namespace {

double coop(const core::Params& p) { return p.kappa > 0.0 ? core::cooperativity(p) : 0.0; }

double loss_with_width(const core::Params& p, double n_g, double m) {
    const double gt = p.gamma_tot();
    const double width = gt * (1.0 + m * coop(p) * n_g / 4.0);
    return -p.gamma_prime * std::norm(p.omega_drive) * n_g / (width * width + p.delta_a * p.delta_a);
}

}  // namespace

double ng_ode_single(const core::Params& p, double n_g) { return loss_with_width(p, n_g, 3.0); }

double ng_ode_many(const core::Params& p, double n_g) {
    return loss_with_width(p, n_g, 2.0 * p.n_emitters + 1.0);
}

double ng_ode_infinite_order_series(const core::Params& p, double n_g) {
    if (n_g <= 0.0) return 0.0;
    const double gt = p.gamma_tot();
    const double c = p.kappa > 0.0 ? p.g * p.g * n_g / (4.0 * p.kappa) : 0.0;
    const auto roots = floquet::toeplitz_roots(core::cx(gt, p.delta_a), c);
    const core::cx lam = roots.inner;
    const core::cx rho = roots.inner_over_c;  // lambda / c
    // (gamma'/gamma_tot)(2 kappa |Omega|^2 / g^2) [|l|^2 (4 + l + l*) + l + l*] / (|l - 1|^2 (1 - |l|^2))
    // with 2 kappa / g^2 = n_g / (2 c) and the bracket divided by c term by term.
    const double lam2 = std::norm(lam);
    const double bracket_over_c = 4.0 * c * std::norm(rho) + 2.0 * rho.real() * (1.0 + lam2);
    const double denom = std::norm(lam - 1.0) * (1.0 - lam2);
    return (p.gamma_prime / gt) * std::norm(p.omega_drive) * (n_g / 2.0) * bracket_over_c / denom;
}

double ng_ode_infinite_order(const core::Params& p, double n_g) {
    return -std::abs(ng_ode_infinite_order_series(p, n_g));
}

std::vector<double> solve_population(const ScalarOde& f, double n0, std::span<const double> times,
                                     double rel_tol, double abs_tol) {
    std::vector<double> out;
    if (times.empty()) return out;
    out.reserve(times.size());
    std::vector<double> y{n0};
    out.push_back(n0);
    const RhsFn rhs = [&f](double, std::span<const double> x, std::span<double> dx) { dx[0] = f(x[0]); };
    StepControls ctl;
    ctl.rel_tol = rel_tol;
    ctl.abs_tol = abs_tol;
    double h = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (times[i] < times[i - 1]) throw std::invalid_argument("solve_population: times must be non-decreasing");
        if (times[i] > times[i - 1]) {
            ctl.t_end = times[i];
            ctl.initial_step = h;
            const auto stats = integrate_dopri5(rhs, y, times[i - 1], ctl);
            h = std::min(stats.largest_step, times[i] - times[i - 1]);
        }
        out.push_back(y[0]);
    }
    return out;
}

}  // namespace purcell::dynamics
