#pragma once

// Dense reference solves for the Floquet systems. These exist to check the
// closed forms: they build the truncated linear systems explicitly and solve
// them with partial-pivoted LU.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "purcell/floquet/floquet.hpp"

namespace purcell::floquet::oracle {

/// Truncated single-emitter system (A + i kv D) b = -i Omega/2 (e_{-1} + e_{+1})
/// over odd harmonics -order..order (order + 1 unknowns, ascending harmonic).
struct TruncatedSystem {
    Eigen::MatrixXcd matrix;
    Eigen::VectorXcd rhs;
    int order = 1;

    /// Position of harmonic n (odd, |n| <= order) in the unknown vector.
    Eigen::Index index_of(int harmonic) const { return (harmonic + order) / 2; }
};

TruncatedSystem truncated_toeplitz_system(const Params& p, double kv, int order);

/// Solution of the truncated system, ascending harmonic order.
Eigen::VectorXcd solve_truncated(const Params& p, double kv, int order);

/// The 2N x 2N system of the N-emitter truncation, scaled by 4 kappa / g^2 so
/// that all off-diagonal entries are one: diagonal
/// a_{j,+-} = [gamma + i(delta_a +- kv_j)] 4 kappa/g^2 + 2, right-hand side
/// -2 i kappa Omega / g^2. Unknown order: b_{1,-}..b_{N,-}, b_{1,+}..b_{N,+}.
struct ManySystem {
    Eigen::MatrixXcd matrix;
    Eigen::VectorXcd rhs;
};

ManySystem many_emitter_system(const Params& p, std::span<const double> kv);

Eigen::VectorXcd solve_dense(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& rhs);

/// ||M x - r||_inf / ||r||_inf.
double relative_residual(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& x,
                         const Eigen::VectorXcd& rhs);

/// Residual of a 2x2 cavity solution in [[a_-, c], [c, a_+]] b = -i Omega/2 (1, 1).
double residual_2x2(const Params& p, double kv, const FloquetSolution& s);

/// Residual of Sherman-Morrison solutions in the scaled 2N x 2N system.
double residual_many(const Params& p, std::span<const double> kv,
                     std::span<const FloquetSolution> solutions);

/// Largest relative deviation between closed-form b0_{2n+1} (n >= 0) and the
/// dense truncated solve at kv = 0.
double infinite_vs_dense(const Params& p, int order);

/// Largest relative deviation between Sherman-Morrison and the dense solve.
double sherman_morrison_vs_dense(const Params& p, std::span<const double> kv);

}  // namespace purcell::floquet::oracle
