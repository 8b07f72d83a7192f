#pragma once

// Closed-form cooling rates, population-loss rates and velocity predictions.
//
// Every function reads the drive from Params::omega_drive and uses |Omega|^2,
// so the same formulas serve free space (real drive) and cavities (complex
// effective drive). gamma_tot = gamma + gamma' replaces gamma throughout;
// for closed transitions the two coincide.

#include "purcell/core/params.hpp"

namespace purcell::analytics {

using core::Params;

struct RegimeFlags {
    bool small_doppler_ok = true;  // |kv| <= kSmallDopplerFraction |delta_a|
    bool regime_i_ok = true;       // gamma_tot C / (4 |delta_a|) < 1
};

inline constexpr double kSmallDopplerFraction = 0.3;

struct RatePrediction {
    double xi = 0.0;  // friction rate, negative means heating
    double mu = 0.0;  // population-loss rate
    RegimeFlags flags;
};

/// 4 |Omega|^2 w_rec delta_a gamma_tot / (gamma_tot^2 + delta_a^2)^2.
double xi_free_space(const Params& p);

/// Purcell-modified single-emitter rate (resonant cavity, 2x2 truncation).
double xi_cavity_single(const Params& p);

/// Per-emitter rate for p.n_emitters emitters; the collective cooperativity
/// only enters the second Lorentzian width.
double xi_cavity_many(const Params& p);

/// gamma' |Omega|^2 / (delta_a^2 + gamma_tot^2).
double mu_free_space(const Params& p);

/// gamma_tot C / (4 |delta_a|); the 2x2 truncation needs this well below one.
double regime_parameter(const Params& p);

/// Rates and validity flags for a scenario at Doppler shift kv.
RatePrediction predict(const core::Scenario& s, double kv);

/// Free-space non-closed velocity v0 exp[(xi/mu)(e^{-mu t} - 1)];
/// pure exponential decay when mu == 0.
double v_of_t_nonclosed_fs(const Params& p, double v0, double t);

/// v0 exp(-xi/mu). Returns 0 when gamma' == 0 (the cycle never ends).
double final_velocity_fs(const Params& p, double v0);

/// Regime-i cavity velocity with the n_g^2 Purcell term.
double v_of_t_nonclosed_cavity_regime_i(const Params& p, double v0, double t);

/// exp[-(xi/mu) C/4].
double final_velocity_ratio_cavity(const Params& p);

struct ExponentIntegral {
    double quadrature = 0.0;      // integral of xi_c(n_g) dt computed over n_g in (0, 1)
    double error_estimate = 0.0;  // quadrature error estimate
    bool converged = false;       // error_estimate <= kExponentAbsTol
    double closed_form = 0.0;     // (xi/mu) [1 + C delta^2 / (4 (delta^2 + gamma_tot^2))]
};

inline constexpr double kExponentAbsTol = 1e-10;

/// Exponent of the final-velocity suppression v_final = v0 exp(-I) for
/// n_emitters non-closed emitters in a resonant cavity. The quadrature keeps
/// the collective factors of both the cooling rate and the population loss, so
/// its N-independence is a genuine check. Requires gamma' > 0 and kappa > 0.
ExponentIntegral final_velocity_exponent_integral(const Params& p, int n_emitters);

}  // namespace purcell::analytics
