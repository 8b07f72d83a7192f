#pragma once

// Mean-field right-hand sides in the flat layout of StateLayout.
//
// Emitter equations (the drive is Omega cos(theta) in free space and
// g cos(theta) alpha in the cavity; closed systems fix n_g - n_e = 1):
//   d beta/dt  = -(gamma_tot + i delta_a) beta - i drive (n_g - n_e)
//   d n_g/dt   = 2 gamma n_e + 2 Im(beta drive*)
//   d n_e/dt   = -2 gamma_tot n_e - 2 Im(beta drive*)
//   d n_i/dt   = 2 gamma' n_e
//   d theta/dt = w
//   d w/dt     = 4 w_rec sin(theta) Re(beta Omega_x*)     (Omega_x = Omega or g alpha)
// Cavity mode:
//   d alpha/dt = -(kappa + i delta_c) alpha - i g sum_j cos(theta_j) beta_j - eta

#include <functional>
#include <span>

#include "purcell/core/params.hpp"

namespace purcell::dynamics {

using core::Params;

using RhsFn = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

void rhs_free_space_closed(const Params& p, std::span<const double> y, std::span<double> dydt);
void rhs_free_space_nonclosed(const Params& p, std::span<const double> y, std::span<double> dydt);
void rhs_cavity_closed(const Params& p, std::span<const double> y, std::span<double> dydt);
void rhs_cavity_nonclosed(const Params& p, std::span<const double> y, std::span<double> dydt);
/// Emitter count is taken from the state size.
void rhs_cavity_closed_many(const Params& p, std::span<const double> y, std::span<double> dydt);
void rhs_cavity_nonclosed_many(const Params& p, std::span<const double> y, std::span<double> dydt);

/// Right-hand side for a validated scenario. The returned callable copies the
/// parameters it needs.
RhsFn make_rhs(const core::Scenario& s);

}  // namespace purcell::dynamics
