#pragma once

// Structured state and its flat layout for the integrator.
//
// Flat layout: cavity scenarios start with [Re alpha, Im alpha]; every emitter
// then contributes [Re beta, Im beta, theta, w] (closed) or
// [Re beta, Im beta, n_g, n_e, n_i, theta, w] (non-closed).

#include <cstddef>
#include <span>
#include <vector>

#include "purcell/core/config.hpp"
#include "purcell/core/params.hpp"

namespace purcell::dynamics {

using core::cx;

struct EmitterState {
    cx beta{};
    double n_g = 1.0;
    double n_e = 0.0;
    double n_i = 0.0;
    double theta = 0.0;
    double w = 0.0;
};

struct SystemState {
    cx alpha{};
    std::vector<EmitterState> emitters;
    double t = 0.0;
};

class StateLayout {
public:
    StateLayout(core::ScenarioKind kind, int n_emitters);

    bool cavity() const noexcept { return cavity_; }
    bool populations() const noexcept { return populations_; }
    int n_emitters() const noexcept { return n_; }
    std::size_t size() const noexcept { return head_ + stride_ * static_cast<std::size_t>(n_); }

    std::size_t emitter(int j) const noexcept { return head_ + stride_ * static_cast<std::size_t>(j); }
    std::size_t beta_re(int j) const noexcept { return emitter(j); }
    std::size_t beta_im(int j) const noexcept { return emitter(j) + 1; }
    std::size_t n_g(int j) const noexcept { return emitter(j) + 2; }
    std::size_t n_e(int j) const noexcept { return emitter(j) + 3; }
    std::size_t n_i(int j) const noexcept { return emitter(j) + 4; }
    std::size_t theta(int j) const noexcept { return emitter(j) + stride_ - 2; }
    std::size_t w(int j) const noexcept { return emitter(j) + stride_ - 1; }

    std::vector<double> pack(const SystemState& s) const;
    /// Closed layouts report n_g = 1, n_e = n_i = 0.
    SystemState unpack(std::span<const double> y, double t) const;

private:
    bool cavity_;
    bool populations_;
    int n_;
    std::size_t head_;
    std::size_t stride_;
};

/// Initial emitter velocities: kv_mean for every emitter when kv_std == 0,
/// otherwise Gaussian draws from a generator seeded with `seed`.
std::vector<double> initial_velocities(const core::InitialSpec& init, int n_emitters);

/// Initial phases: theta0 for all emitters, or the uniform grid 2 pi j / N.
std::vector<double> initial_phases(const core::InitialSpec& init, int n_emitters);

/// beta = 0, alpha = 0, n_g = 1, n_e = n_i = 0 with the configured motion.
SystemState initial_state(const core::RunConfig& cfg);

}  // namespace purcell::dynamics
