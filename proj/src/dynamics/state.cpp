#include "purcell/dynamics/state.hpp"

#include <numbers>
#include <random>

namespace purcell::dynamics {

StateLayout::StateLayout(core::ScenarioKind kind, int n_emitters)
    : cavity_(core::is_cavity(kind)),
      populations_(!core::is_closed(kind)),
      n_(n_emitters),
      head_(cavity_ ? 2 : 0),
      stride_(populations_ ? 7 : 4) {}

std::vector<double> StateLayout::pack(const SystemState& s) const {
    std::vector<double> y(size(), 0.0);
    if (cavity_) {
        y[0] = s.alpha.real();
        y[1] = s.alpha.imag();
    }
    for (int j = 0; j < n_; ++j) {
        const EmitterState& e = s.emitters[static_cast<std::size_t>(j)];
        y[beta_re(j)] = e.beta.real();
        y[beta_im(j)] = e.beta.imag();
        if (populations_) {
            y[n_g(j)] = e.n_g;
            y[n_e(j)] = e.n_e;
            y[n_i(j)] = e.n_i;
        }
        y[theta(j)] = e.theta;
        y[w(j)] = e.w;
    }
    return y;
}

SystemState StateLayout::unpack(std::span<const double> y, double t) const {
    SystemState s;
    s.t = t;
    if (cavity_) s.alpha = cx(y[0], y[1]);
    s.emitters.resize(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) {
        EmitterState& e = s.emitters[static_cast<std::size_t>(j)];
        e.beta = cx(y[beta_re(j)], y[beta_im(j)]);
        if (populations_) {
            e.n_g = y[n_g(j)];
            e.n_e = y[n_e(j)];
            e.n_i = y[n_i(j)];
        }
        e.theta = y[theta(j)];
        e.w = y[w(j)];
    }
    return s;
}

std::vector<double> initial_velocities(const core::InitialSpec& init, int n_emitters) {
    std::vector<double> kv(static_cast<std::size_t>(n_emitters), init.kv_mean);
    if (init.kv_std > 0.0) {
        std::mt19937_64 rng(init.seed);
        std::normal_distribution<double> dist(init.kv_mean, init.kv_std);
        for (double& v : kv) v = dist(rng);
    }
    return kv;
}

std::vector<double> initial_phases(const core::InitialSpec& init, int n_emitters) {
    std::vector<double> theta(static_cast<std::size_t>(n_emitters), init.theta0);
    if (init.theta_uniform) {
        for (int j = 0; j < n_emitters; ++j)
            theta[static_cast<std::size_t>(j)] = 2.0 * std::numbers::pi * j / n_emitters;
    }
    return theta;
}

SystemState initial_state(const core::RunConfig& cfg) {
    const int n = cfg.scenario.params().n_emitters;
    const auto kv = initial_velocities(cfg.initial, n);
    const auto theta = initial_phases(cfg.initial, n);
    SystemState s;
    s.emitters.resize(static_cast<std::size_t>(n));
    for (std::size_t j = 0; j < s.emitters.size(); ++j) {
        s.emitters[j].theta = theta[j];
        s.emitters[j].w = kv[j];
    }
    return s;
}

}  // namespace purcell::dynamics
