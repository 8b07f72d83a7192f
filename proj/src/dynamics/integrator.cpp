#include "purcell/dynamics/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace purcell::dynamics {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Continuous extension (4th order).
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

// Step-size controller (Hairer's PI variant).
constexpr double kSafety = 0.9;
constexpr double kBeta = 0.04;
constexpr double kExpo = 0.2 - kBeta * 0.75;
constexpr double kMinShrink = 0.2;  // h_new >= h / 5
constexpr double kMaxGrow = 10.0;

struct Dense {
    std::vector<double> r1, r2, r3, r4, r5;

    void eval(double theta, std::vector<double>& out) const {
        const double theta1 = 1.0 - theta;
        for (std::size_t i = 0; i < r1.size(); ++i)
            out[i] = r1[i] + theta * (r2[i] + theta1 * (r3[i] + theta * (r4[i] + theta1 * r5[i])));
    }
};

}  // namespace

IntegratorStats integrate_dopri5(const RhsFn& rhs, std::vector<double>& y, double t0,
                                 const StepControls& ctl, const SampleFn& on_sample,
                                 const StepObserver& on_step) {
    const std::size_t n = y.size();
    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), y_new(n);
    Dense dense{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n),
                std::vector<double>(n), std::vector<double>(n)};
    std::vector<double> sample(n);

    IntegratorStats stats;
    auto f = [&](double t, const std::vector<double>& x, std::vector<double>& dx) {
        rhs(t, x, dx);
        ++stats.rhs_evals;
    };

    double t = t0;
    const double t_end = ctl.t_end;
    f(t, y, k1);

    auto scale = [&](double a, double b) {
        return ctl.abs_tol + ctl.rel_tol * std::max(std::abs(a), std::abs(b));
    };

    double h = ctl.initial_step;
    if (h <= 0.0) {
        double d0 = 0.0, d1n = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sc = scale(y[i], y[i]);
            d0 = std::max(d0, std::abs(y[i]) / sc);
            d1n = std::max(d1n, std::abs(k1[i]) / sc);
        }
        double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
        h0 = std::min(h0, ctl.max_step);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h0 * k1[i];
        f(t + h0, tmp, k2);
        double d2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) d2 = std::max(d2, std::abs(k2[i] - k1[i]) / scale(y[i], y[i]));
        d2 /= h0;
        const double dm = std::max(d1n, d2);
        const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
        h = std::min({100.0 * h0, h1, ctl.max_step});
    }

    double next_sample_index = 0.0;
    double last_sampled = -std::numeric_limits<double>::infinity();
    auto sample_at = [&](double ts, const std::vector<double>& x) {
        if (on_sample) on_sample(ts, x);
        last_sampled = ts;
    };
    auto next_sample_time = [&] { return t0 + next_sample_index * ctl.stride; };
    if (on_sample) {
        sample_at(t, y);
        next_sample_index = 1.0;
    }

    double fac_old = 1e-4;
    bool last_rejected = false;
    bool done = t >= t_end;
    while (!done) {
        if (stats.steps + stats.rejected >= ctl.max_steps) {
            std::ostringstream msg;
            msg << "integrate_dopri5: step budget exhausted at t = " << t;
            throw IntegrationError(msg.str(), t, 0);
        }
        bool last = false;
        if (t + h >= t_end) {
            h = t_end - t;
            last = true;
        }

        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
        f(t + c2 * h, tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        f(t + c3 * h, tmp, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        f(t + c4 * h, tmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        f(t + c5 * h, tmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        const double t_next = last ? t_end : t + h;
        f(t_next, tmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            y_new[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        f(t_next, y_new, k7);

        double err_norm = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e =
                h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double r = std::abs(e) / scale(y[i], y_new[i]);
            if (r > err_norm) {
                err_norm = r;
                worst = i;
            }
        }
        if (!std::isfinite(err_norm)) err_norm = 1e10;

        const double fac11 = std::pow(err_norm, kExpo);
        if (err_norm <= 1.0) {
            double fac = fac11 / std::pow(fac_old, kBeta);
            fac = std::max(1.0 / kMaxGrow, std::min(1.0 / kMinShrink, fac / kSafety));
            fac_old = std::max(err_norm, 1e-4);

            ++stats.steps;
            stats.smallest_step = std::min(stats.smallest_step, h);
            stats.largest_step = std::max(stats.largest_step, h);

            if (on_sample && ctl.stride > 0.0) {
                double ts = next_sample_time();
                if (ts <= t_next) {
                    for (std::size_t i = 0; i < n; ++i) {
                        dense.r1[i] = y[i];
                        const double dy = y_new[i] - y[i];
                        dense.r2[i] = dy;
                        dense.r3[i] = h * k1[i] - dy;
                        dense.r4[i] = dy - h * k7[i] - dense.r3[i];
                        dense.r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                           d6 * k6[i] + d7 * k7[i]);
                    }
                    while (ts <= t_next) {
                        if (ts == t_next) {
                            sample_at(ts, y_new);
                        } else {
                            dense.eval((ts - t) / h, sample);
                            sample_at(ts, sample);
                        }
                        next_sample_index += 1.0;
                        ts = next_sample_time();
                    }
                }
            }

            bool keep_going = true;
            if (on_step) keep_going = on_step(t, y, t_next, y_new);

            y.swap(y_new);
            k1.swap(k7);
            t = t_next;
            if (!keep_going) {
                stats.stopped_early = true;
                done = true;
            } else if (last) {
                done = true;
            }
            double h_new = h / fac;
            if (last_rejected) h_new = std::min(h_new, h);
            h = std::min(h_new, ctl.max_step);
            last_rejected = false;
        } else {
            h /= std::min(1.0 / kMinShrink, fac11 / kSafety);
            last_rejected = true;
            ++stats.rejected;
        }

        if (!done && h <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
            std::ostringstream msg;
            msg << "integrate_dopri5: step size underflow at t = " << t << " (h = " << h
                << "), dominant error in component " << worst;
            throw IntegrationError(msg.str(), t, worst);
        }
    }

    if (on_sample && last_sampled != t) sample_at(t, y);
    stats.t_final = t;
    return stats;
}

}  // namespace purcell::dynamics
