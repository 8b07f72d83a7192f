#pragma once

// Semi-analytic ground-state population equations for non-closed emitters in
// a resonant cavity, and a small solver to evaluate them on a time grid.

#include <functional>
#include <span>
#include <vector>

#include "purcell/core/params.hpp"

namespace purcell::dynamics {

/// -gamma' |Omega|^2 n_g / [gamma_tot^2 (1 + 3 C n_g / 4)^2 + delta_a^2].
double ng_ode_single(const core::Params& p, double n_g);

/// Same with the collective width (2N + 1) C n_g / 4, N = p.n_emitters.
double ng_ode_many(const core::Params& p, double n_g);

/// All-order loss rate from the geometric series over the Floquet harmonics,
/// with lambda evaluated at the population-reduced coupling g^2 n_g. This is
/// the series value as written, before any sign convention is imposed.
double ng_ode_infinite_order_series(const core::Params& p, double n_g);

/// The series value forced to the loss sign (never positive). The series is
/// non-positive wherever it has been evaluated; the sign is imposed so a
/// caller integrating it can never produce population gain.
double ng_ode_infinite_order(const core::Params& p, double n_g);

using ScalarOde = std::function<double(double)>;

/// Solves dn/dt = f(n) with n(times[0]) = n0 and returns n at every entry of
/// `times` (non-decreasing).
std::vector<double> solve_population(const ScalarOde& f, double n0, std::span<const double> times,
                                     double rel_tol = 1e-10, double abs_tol = 1e-12);

}  // namespace purcell::dynamics
