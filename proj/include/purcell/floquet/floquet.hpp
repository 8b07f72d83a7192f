#pragma once

// Steady-state Floquet coefficients of the emitter coherence
//   beta = sum_n b_n exp(i n k x)
// in a standing-wave drive, for free space, the resonant cavity (2x2
// truncation and all orders), and N emitters sharing one cavity mode.
//
// Doppler expansion convention: b_{+-1} ~ b0 +- kv b1.
// All solvers use gamma_tot and read the drive from Params::omega_drive.

#include <optional>
#include <span>
#include <vector>

#include "purcell/core/params.hpp"

namespace purcell::floquet {

using core::cx;
using core::Params;

struct FloquetSolution {
    cx b_minus{};                // b_{-1}
    cx b_plus{};                 // b_{+1}
    cx b0{};                     // velocity-independent part
    cx b1{};                     // linear Doppler response
    std::vector<cx> higher;      // b0_{2n+1} for n >= 1 (infinite-order solver only)
    std::optional<cx> lambda;    // in-disk Toeplitz root
    bool regime_ok = true;       // gamma C / (4 delta_a) < 1 for cavity solvers
};

/// b_{+-1} = -i Omega / (2 [gamma + i(delta_a +- kv)]).
FloquetSolution floquet_free_space(const Params& p, double kv);

/// Resonant cavity (delta_c == delta_a) truncated to b_{+-1}.
/// Throws std::invalid_argument if delta_c != delta_a or kappa <= 0.
FloquetSolution floquet_cavity_2x2(const Params& p, double kv);

/// Roots of c lambda^2 + a lambda + c = 0. The roots multiply to one;
/// `inner` is the root with |lambda| < 1.
struct ToeplitzRoots {
    cx inner{};
    cx outer{};
    cx inner_over_c{};  // inner / c, finite as c -> 0
};

/// a = (gamma_tot + i delta) + 2c. Throws std::domain_error when both roots
/// sit on the unit circle.
ToeplitzRoots toeplitz_roots(cx z, double c);

/// In-disk root for the closed-system cavity: z = gamma_tot + i delta_a,
/// c = g^2 / (4 kappa). Requires g > 0 and kappa > 0.
cx toeplitz_lambda(const Params& p);

/// Smallest odd order with |lambda|^((order+1)/2) < 1e-12, capped at 401.
int default_truncation_order(cx lambda);

/// All-order closed form at resonance: b0_{2n+1} up to `order` (positive odd
/// harmonic index) and b1 from the Toeplitz Green's function.
FloquetSolution floquet_cavity_infinite(const Params& p, int order);

/// N emitters, truncated to b_{j,+-1} and solved with Sherman-Morrison.
/// kv has one entry per emitter. b0 and b1 hold the expansion with collective
/// width gamma (1 + C (2N + 1) / 4).
std::vector<FloquetSolution> floquet_many_sherman_morrison(const Params& p,
                                                           std::span<const double> kv);

/// alpha = -eta / (kappa + i delta_c) - (i g / kappa) sum_j b0_j.
cx cavity_amplitude_adiabatic(const Params& p, std::span<const FloquetSolution> solutions);

/// Spatially averaged friction rate 4 w_rec Im(Omega* b1).
double friction_rate(const Params& p, const FloquetSolution& s);

}  // namespace purcell::floquet
