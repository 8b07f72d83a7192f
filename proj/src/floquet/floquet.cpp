#include "purcell/floquet/floquet.hpp"

#include <cmath>
#include <stdexcept>

namespace purcell::floquet {

namespace {

constexpr cx I{0.0, 1.0};

void require_resonant_cavity(const Params& p, const char* who) {
    if (!(p.kappa > 0.0)) throw std::invalid_argument(std::string(who) + ": kappa must be > 0");
    if (p.delta_c != p.delta_a)
        throw std::invalid_argument(std::string(who) +
                                    ": only the resonant cavity (delta_c == delta_a) is supported");
}

bool regime_i(const Params& p, double c) {
    // c = g^2 / (4 kappa) = gamma_tot C / 4
    return c < std::abs(p.delta_a);
}

}  // namespace

FloquetSolution floquet_free_space(const Params& p, double kv) {
    const cx z{p.gamma_tot(), p.delta_a};
    const cx drive = -I * p.omega_drive / 2.0;
    FloquetSolution s;
    s.b_plus = drive / (z + I * kv);
    s.b_minus = drive / (z - I * kv);
    s.b0 = drive / z;
    s.b1 = -p.omega_drive / (2.0 * z * z);
    return s;
}

FloquetSolution floquet_cavity_2x2(const Params& p, double kv) {
    require_resonant_cavity(p, "floquet_cavity_2x2");
    const double c = p.g * p.g / (4.0 * p.kappa);
    const cx z{p.gamma_tot(), p.delta_a};
    const cx drive = -I * p.omega_drive / 2.0;

    // [[a_-, c], [c, a_+]] with a_+- = z + 2c +- i kv equals diag(w_+-) + c 1 1^T.
    const cx w_plus = z + c + I * kv;
    const cx w_minus = z + c - I * kv;
    const cx denom = 1.0 + c * (1.0 / w_plus + 1.0 / w_minus);

    FloquetSolution s;
    s.b_plus = drive / (w_plus * denom);
    s.b_minus = drive / (w_minus * denom);
    s.b0 = drive / (z + 3.0 * c);
    s.b1 = -p.omega_drive / (2.0 * (z + c) * (z + 3.0 * c));
    s.regime_ok = regime_i(p, c);
    return s;
}

ToeplitzRoots toeplitz_roots(cx z, double c) {
    const cx a = z + 2.0 * c;
    ToeplitzRoots r;
    if (c == 0.0) {
        r.inner = 0.0;
        r.outer = cx(INFINITY, 0.0);
        r.inner_over_c = -1.0 / a;
        return r;
    }
    // q = -(a + s)/2 with the sign of s chosen against cancellation; the roots
    // are q/c and c/q.
    cx s = std::sqrt(a * a - 4.0 * c * c);
    if (std::abs(a + s) < std::abs(a - s)) s = -s;
    const cx q = -(a + s) / 2.0;
    const cx r1 = q / c;
    const cx r2 = c / q;
    if (std::abs(r1) < std::abs(r2)) {
        r.inner = r1;
        r.outer = r2;
        r.inner_over_c = q / (c * c);
    } else {
        r.inner = r2;
        r.outer = r1;
        r.inner_over_c = 1.0 / q;
    }
    if (!(std::abs(r.inner) < 1.0))
        throw std::domain_error("toeplitz_roots: both roots on the unit circle (singular operator)");
    return r;
}

cx toeplitz_lambda(const Params& p) {
    if (!(p.g > 0.0) || !(p.kappa > 0.0))
        throw std::invalid_argument("toeplitz_lambda: needs g > 0 and kappa > 0");
    return toeplitz_roots(cx(p.gamma_tot(), p.delta_a), p.g * p.g / (4.0 * p.kappa)).inner;
}

int default_truncation_order(cx lambda) {
    constexpr int kMaxOrder = 401;
    const double m = std::abs(lambda);
    int order = 1;
    double decay = m;  // |lambda|^((order+1)/2)
    while (decay >= 1e-12 && order < kMaxOrder) {
        order += 2;
        decay *= m;
    }
    return order;
}

FloquetSolution floquet_cavity_infinite(const Params& p, int order) {
    require_resonant_cavity(p, "floquet_cavity_infinite");
    if (order < 1 || order % 2 == 0)
        throw std::invalid_argument("floquet_cavity_infinite: order must be a positive odd integer");
    const double c = p.g * p.g / (4.0 * p.kappa);
    const ToeplitzRoots roots = toeplitz_roots(cx(p.gamma_tot(), p.delta_a), c);
    const cx lam = roots.inner;
    const cx lam_c = roots.inner_over_c;
    const cx drive = -I * p.omega_drive / 2.0;

    // Green's function of the bi-infinite operator: G_k = lambda^(|k|+1) / (c (lambda^2 - 1)).
    // Driving positions 0 and -1 gives b0_{2n+1} = drive lambda^(n+1) / (c (lambda - 1)).
    FloquetSolution s;
    s.lambda = lam;
    s.b0 = drive * lam_c / (lam - 1.0);
    s.b_plus = s.b0;
    s.b_minus = s.b0;
    const int n_higher = (order - 1) / 2;
    s.higher.reserve(static_cast<std::size_t>(n_higher));
    cx next = s.b0;
    for (int n = 1; n <= n_higher; ++n) {
        next *= lam;
        s.higher.push_back(next);
    }
    // A^-1 D A^-1 Omega at harmonic +1 is -drive (lambda/c)^2 lambda^0 (lambda^2+1)/(lambda^2-1)^3
    // and b_{+1} = b0 - i kv (A^-1 D A^-1 Omega), so b1 = i drive (lambda/c)^2 (lambda^2+1)/(lambda^2-1)^3.
    const cx l2 = lam * lam;
    s.b1 = I * drive * lam_c * lam_c * (l2 + 1.0) / ((l2 - 1.0) * (l2 - 1.0) * (l2 - 1.0));
    s.regime_ok = regime_i(p, c);
    return s;
}

std::vector<FloquetSolution> floquet_many_sherman_morrison(const Params& p,
                                                           std::span<const double> kv) {
    require_resonant_cavity(p, "floquet_many_sherman_morrison");
    const double c = p.g * p.g / (4.0 * p.kappa);
    const cx z{p.gamma_tot(), p.delta_a};
    const cx drive = -I * p.omega_drive / 2.0;
    const double n = static_cast<double>(kv.size());

    // Matrix diag(w_{j,+-}) + c 1 1^T with w_{j,+-} = z + c +- i kv_j.
    // Sherman-Morrison: b = drive D^-1 1 / (1 + c 1^T D^-1 1).
    cx trace_inv{0.0, 0.0};
    for (double v : kv) trace_inv += 1.0 / (z + c + I * v) + 1.0 / (z + c - I * v);
    const cx denom = 1.0 + c * trace_inv;

    const cx b0 = drive / (z + (2.0 * n + 1.0) * c);
    const cx b1 = -p.omega_drive / (2.0 * (z + c) * (z + (2.0 * n + 1.0) * c));
    std::vector<FloquetSolution> out(kv.size());
    for (std::size_t j = 0; j < kv.size(); ++j) {
        FloquetSolution& s = out[j];
        s.b_plus = drive / ((z + c + I * kv[j]) * denom);
        s.b_minus = drive / ((z + c - I * kv[j]) * denom);
        s.b0 = b0;
        s.b1 = b1;
        s.regime_ok = regime_i(p, c);
    }
    return out;
}

cx cavity_amplitude_adiabatic(const Params& p, std::span<const FloquetSolution> solutions) {
    if (!(p.kappa > 0.0)) throw std::invalid_argument("cavity_amplitude_adiabatic: kappa must be > 0");
    cx sum{0.0, 0.0};
    for (const auto& s : solutions) sum += s.b0;
    return -p.eta / cx(p.kappa, p.delta_c) - I * p.g / p.kappa * sum;
}

double friction_rate(const Params& p, const FloquetSolution& s) {
    return 4.0 * p.omega_rec * std::imag(std::conj(p.omega_drive) * s.b1);
}

}  // namespace purcell::floquet
