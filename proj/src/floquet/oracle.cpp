#include "purcell/floquet/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace purcell::floquet::oracle {

namespace {

constexpr cx I{0.0, 1.0};

double rel_dev(cx got, cx want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TruncatedSystem truncated_toeplitz_system(const Params& p, double kv, int order) {
    if (order < 1 || order % 2 == 0) throw std::invalid_argument("order must be a positive odd integer");
    const double c = p.g * p.g / (4.0 * p.kappa);
    const cx a = cx(p.gamma_tot(), p.delta_a) + 2.0 * c;
    const Eigen::Index m = order + 1;

    TruncatedSystem sys;
    sys.order = order;
    sys.matrix = Eigen::MatrixXcd::Zero(m, m);
    sys.rhs = Eigen::VectorXcd::Zero(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const int harmonic = -order + 2 * static_cast<int>(i);
        sys.matrix(i, i) = a + I * kv * static_cast<double>(harmonic);
        if (i > 0) sys.matrix(i, i - 1) = c;
        if (i + 1 < m) sys.matrix(i, i + 1) = c;
    }
    const cx drive = -I * p.omega_drive / 2.0;
    sys.rhs(sys.index_of(-1)) = drive;
    sys.rhs(sys.index_of(+1)) = drive;
    return sys;
}

Eigen::VectorXcd solve_dense(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& rhs) {
    return m.partialPivLu().solve(rhs);
}

Eigen::VectorXcd solve_truncated(const Params& p, double kv, int order) {
    const TruncatedSystem sys = truncated_toeplitz_system(p, kv, order);
    return solve_dense(sys.matrix, sys.rhs);
}

ManySystem many_emitter_system(const Params& p, std::span<const double> kv) {
    const auto n = static_cast<Eigen::Index>(kv.size());
    const double scale = 4.0 * p.kappa / (p.g * p.g);
    const cx z{p.gamma_tot(), p.delta_a};
    ManySystem sys;
    sys.matrix = Eigen::MatrixXcd::Ones(2 * n, 2 * n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double v = kv[static_cast<std::size_t>(j)];
        sys.matrix(j, j) = (z - I * v) * scale + 2.0;
        sys.matrix(n + j, n + j) = (z + I * v) * scale + 2.0;
    }
    sys.rhs = Eigen::VectorXcd::Constant(2 * n, -2.0 * I * p.kappa * p.omega_drive / (p.g * p.g));
    return sys;
}

double relative_residual(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& x,
                         const Eigen::VectorXcd& rhs) {
    return (m * x - rhs).cwiseAbs().maxCoeff() / rhs.cwiseAbs().maxCoeff();
}

double residual_2x2(const Params& p, double kv, const FloquetSolution& s) {
    const TruncatedSystem sys = truncated_toeplitz_system(p, kv, 1);
    Eigen::VectorXcd x(2);
    x << s.b_minus, s.b_plus;
    return relative_residual(sys.matrix, x, sys.rhs);
}

double residual_many(const Params& p, std::span<const double> kv,
                     std::span<const FloquetSolution> solutions) {
    const ManySystem sys = many_emitter_system(p, kv);
    const auto n = static_cast<Eigen::Index>(kv.size());
    Eigen::VectorXcd x(2 * n);
    for (Eigen::Index j = 0; j < n; ++j) {
        x(j) = solutions[static_cast<std::size_t>(j)].b_minus;
        x(n + j) = solutions[static_cast<std::size_t>(j)].b_plus;
    }
    return relative_residual(sys.matrix, x, sys.rhs);
}

double infinite_vs_dense(const Params& p, int order) {
    const FloquetSolution closed = floquet_cavity_infinite(p, order);
    // Pad the dense truncation well beyond the compared harmonics so the
    // truncation edge does not pollute them.
    const int dense_order = 2 * order + 1;
    const TruncatedSystem sys = truncated_toeplitz_system(p, 0.0, dense_order);
    const Eigen::VectorXcd x = solve_dense(sys.matrix, sys.rhs);
    double worst = rel_dev(closed.b0, x(sys.index_of(1)));
    worst = std::max(worst, rel_dev(closed.b0, x(sys.index_of(-1))));
    const double floor = std::abs(closed.b0) * 1e-12;
    for (std::size_t k = 0; k < closed.higher.size(); ++k) {
        const int harmonic = 3 + 2 * static_cast<int>(k);
        const cx want = x(sys.index_of(harmonic));
        // Coefficients that have decayed below the comparison floor carry no
        // relative information.
        if (std::abs(want) < floor) break;
        worst = std::max(worst, rel_dev(closed.higher[k], want));
    }
    return worst;
}

double sherman_morrison_vs_dense(const Params& p, std::span<const double> kv) {
    const auto sm = floquet_many_sherman_morrison(p, kv);
    const ManySystem sys = many_emitter_system(p, kv);
    const Eigen::VectorXcd x = solve_dense(sys.matrix, sys.rhs);
    const auto n = static_cast<Eigen::Index>(kv.size());
    double worst = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        worst = std::max(worst, rel_dev(sm[static_cast<std::size_t>(j)].b_minus, x(j)));
        worst = std::max(worst, rel_dev(sm[static_cast<std::size_t>(j)].b_plus, x(n + j)));
    }
    return worst;
}

}  // namespace purcell::floquet::oracle
