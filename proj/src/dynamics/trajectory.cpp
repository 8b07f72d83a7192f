#include "purcell/dynamics/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "purcell/dynamics/rhs.hpp"

namespace purcell::dynamics {

namespace {

constexpr std::size_t kDefaultPerEmitterLimit = 16;
constexpr double kPi = std::numbers::pi;

enum class Obs { W, Theta, Ng, Ne, Ni, AbsBeta, AbsAlpha, ArgAlpha, MeanW, StdW, MeanNg };

struct Column {
    Obs obs;
    int emitter = -1;
};

Obs obs_from_name(const std::string& name) {
    if (name == "w") return Obs::W;
    if (name == "theta") return Obs::Theta;
    if (name == "ng") return Obs::Ng;
    if (name == "ne") return Obs::Ne;
    if (name == "ni") return Obs::Ni;
    if (name == "abs_beta") return Obs::AbsBeta;
    if (name == "abs_alpha") return Obs::AbsAlpha;
    if (name == "arg_alpha") return Obs::ArgAlpha;
    if (name == "mean_w") return Obs::MeanW;
    if (name == "std_w") return Obs::StdW;
    if (name == "mean_ng") return Obs::MeanNg;
    throw std::invalid_argument("unknown observable " + name);
}

bool per_emitter(Obs o) {
    return o == Obs::W || o == Obs::Theta || o == Obs::Ng || o == Obs::Ne || o == Obs::Ni ||
           o == Obs::AbsBeta;
}

std::vector<Column> resolve(const core::RunConfig& cfg, const std::vector<std::string>& names,
                            std::vector<std::string>* labels) {
    const int n = cfg.scenario.params().n_emitters;
    std::vector<Column> cols;
    for (const auto& name : names) {
        const Obs o = obs_from_name(name);
        if (per_emitter(o)) {
            for (int j = 0; j < n; ++j) {
                cols.push_back({o, j});
                if (labels) labels->push_back(name + "_" + std::to_string(j));
            }
        } else {
            cols.push_back({o, -1});
            if (labels) labels->push_back(name);
        }
    }
    return cols;
}

double mean_ng(const StateLayout& layout, std::span<const double> y) {
    double s = 0.0;
    for (int j = 0; j < layout.n_emitters(); ++j) s += y[layout.n_g(j)];
    return s / layout.n_emitters();
}

double value(const StateLayout& layout, const Column& c, std::span<const double> y) {
    const int j = c.emitter;
    const int n = layout.n_emitters();
    switch (c.obs) {
        case Obs::W: return y[layout.w(j)];
        case Obs::Theta: return y[layout.theta(j)];
        case Obs::Ng: return y[layout.n_g(j)];
        case Obs::Ne: return y[layout.n_e(j)];
        case Obs::Ni: return y[layout.n_i(j)];
        case Obs::AbsBeta: return std::hypot(y[layout.beta_re(j)], y[layout.beta_im(j)]);
        case Obs::AbsAlpha: return std::hypot(y[0], y[1]);
        case Obs::ArgAlpha: return std::atan2(y[1], y[0]);
        case Obs::MeanW: {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += y[layout.w(k)];
            return s / n;
        }
        case Obs::StdW: {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += y[layout.w(k)];
            const double m = s / n;
            double v = 0.0;
            for (int k = 0; k < n; ++k) v += (y[layout.w(k)] - m) * (y[layout.w(k)] - m);
            return std::sqrt(v / n);
        }
        case Obs::MeanNg: return mean_ng(layout, y);
    }
    return 0.0;
}

// Follows theta through multiples of pi and w through zero for one emitter.
class EnvelopeTracker {
public:
    EnvelopeTracker(std::size_t theta_index, std::size_t w_index, double theta0)
        : theta_(theta_index), w_(w_index), cell_(std::floor(theta0 / kPi)) {
        if (theta0 == cell_ * kPi) last_crossing_ = 0.0;
    }

    void step(double t0, std::span<const double> y0, double t1, std::span<const double> y1) {
        const double th0 = y0[theta_], th1 = y1[theta_];
        const double w0 = y0[w_], w1 = y1[w_];
        if (std::isnan(env.first_zero_crossing)) {
            const double cell1 = std::floor(th1 / kPi);
            // Crossing times of theta = m pi by cubic Hermite interpolation
            // (theta' = w at both ends).
            while (cell1 != cell_) {
                const double boundary = (cell1 > cell_ ? cell_ + 1.0 : cell_) * kPi;
                const double tc = crossing_time(t0, th0, w0, t1, th1, w1, boundary);
                if (!std::isnan(last_crossing_)) {
                    const double dt = tc - last_crossing_;
                    const double sign = cell1 > cell_ ? 1.0 : -1.0;
                    if (dt > 0.0) env.points.push_back({0.5 * (tc + last_crossing_), sign * kPi / dt});
                }
                last_crossing_ = tc;
                cell_ += cell1 > cell_ ? 1.0 : -1.0;
            }
            if (w0 != 0.0 && (w1 == 0.0 || std::signbit(w1) != std::signbit(w0))) {
                const double s = w0 / (w0 - w1);
                env.first_zero_crossing = t0 + s * (t1 - t0);
                const double th = th0 + s * (th1 - th0);
                env.trap_center = std::round(th / kPi) * kPi;
                env.max_trap_excursion = std::abs(th - env.trap_center);
            }
        }
        if (!std::isnan(env.trap_center))
            env.max_trap_excursion = std::max(env.max_trap_excursion, std::abs(th1 - env.trap_center));
    }

    Envelope env;

private:
    static double crossing_time(double t0, double th0, double w0, double t1, double th1, double w1,
                                double target) {
        const double h = t1 - t0;
        auto hermite = [&](double s) {
            const double s2 = s * s, s3 = s2 * s;
            return (2 * s3 - 3 * s2 + 1) * th0 + (s3 - 2 * s2 + s) * h * w0 + (-2 * s3 + 3 * s2) * th1 +
                   (s3 - s2) * h * w1;
        };
        double lo = 0.0, hi = 1.0;
        const bool rising = th1 > th0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            if ((hermite(mid) < target) == rising)
                lo = mid;
            else
                hi = mid;
        }
        return t0 + 0.5 * (lo + hi) * h;
    }

    std::size_t theta_;
    std::size_t w_;
    double cell_;
    double last_crossing_ = kNaN;
};

}  // namespace

bool Trajectory::has_column(std::string_view name) const {
    return std::find(columns.begin(), columns.end(), name) != columns.end();
}

std::span<const double> Trajectory::column(std::string_view name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw std::out_of_range("no column " + std::string(name));
    return data[static_cast<std::size_t>(it - columns.begin())];
}

std::vector<std::string> default_observables(const core::RunConfig& cfg) {
    const auto kind = cfg.scenario.kind();
    const bool closed = core::is_closed(kind);
    std::vector<std::string> obs;
    if (static_cast<std::size_t>(cfg.scenario.params().n_emitters) <= kDefaultPerEmitterLimit) {
        obs = {"w", "theta"};
        if (!closed) obs.insert(obs.end(), {"ng", "ne", "ni"});
        obs.push_back("abs_beta");
    }
    if (core::is_cavity(kind)) obs.insert(obs.end(), {"abs_alpha", "arg_alpha"});
    if (core::is_many(kind)) {
        obs.insert(obs.end(), {"mean_w", "std_w"});
        if (!closed) obs.push_back("mean_ng");
    }
    return obs;
}

std::vector<std::string> column_names(const core::RunConfig& cfg,
                                      const std::vector<std::string>& observables) {
    std::vector<std::string> labels{"t"};
    resolve(cfg, observables, &labels);
    return labels;
}

Trajectory simulate(const core::RunConfig& cfg, const SimulationOptions& options) {
    const auto& scenario = cfg.scenario;
    const int n = scenario.params().n_emitters;
    const StateLayout layout(scenario.kind(), n);
    const RhsFn rhs = make_rhs(scenario);

    Trajectory traj;
    const auto observables =
        cfg.recording.observables.empty() ? default_observables(cfg) : cfg.recording.observables;
    traj.columns.push_back("t");
    const auto cols = resolve(cfg, observables, &traj.columns);
    traj.data.resize(traj.columns.size());
    traj.ng_stop = cfg.integrator.ng_stop;

    std::vector<double> y = layout.pack(initial_state(cfg));

    std::vector<EnvelopeTracker> trackers;
    const std::size_t tracked = std::min(options.envelope_emitters, static_cast<std::size_t>(n));
    for (std::size_t j = 0; j < tracked; ++j) {
        const int jj = static_cast<int>(j);
        trackers.emplace_back(layout.theta(jj), layout.w(jj), y[layout.theta(jj)]);
    }

    StepControls ctl;
    ctl.rel_tol = cfg.integrator.rel_tol;
    ctl.abs_tol = cfg.integrator.abs_tol;
    ctl.t_end = cfg.integrator.t_end;
    ctl.max_step = cfg.integrator.max_step;
    ctl.stride = cfg.recording.stride;

    auto on_sample = [&](double t, std::span<const double> x) {
        traj.data[0].push_back(t);
        for (std::size_t c = 0; c < cols.size(); ++c) traj.data[c + 1].push_back(value(layout, cols[c], x));
    };

    const bool populations = layout.populations();
    const double ng_stop = cfg.integrator.ng_stop;
    auto on_step = [&](double t0, std::span<const double> y0, double t1, std::span<const double> y1) {
        for (auto& tr : trackers) tr.step(t0, y0, t1, y1);
        if (!populations) return true;
        for (int j = 0; j < n; ++j) {
            const double sum = y1[layout.n_g(j)] + y1[layout.n_e(j)] + y1[layout.n_i(j)];
            traj.max_population_drift = std::max(traj.max_population_drift, std::abs(sum - 1.0));
        }
        if (ng_stop > 0.0 && mean_ng(layout, y1) < ng_stop) {
            traj.t_threshold = t1;
            return false;
        }
        return true;
    };

    traj.stats = integrate_dopri5(rhs, y, 0.0, ctl, on_sample, on_step);
    traj.final_state = layout.unpack(y, traj.stats.t_final);
    for (auto& tr : trackers) traj.envelopes.push_back(std::move(tr.env));
    return traj;
}

}  // namespace purcell::dynamics
