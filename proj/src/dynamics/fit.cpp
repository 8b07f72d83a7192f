#include "purcell/dynamics/fit.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace purcell::dynamics {

RateReport fit_log_linear(std::span<const double> t, std::span<const double> y) {
    RateReport r;
    if (t.size() != y.size()) {
        r.message = "time and value series differ in length";
        return r;
    }
    double st = 0.0, sy = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(y[i] > 0.0)) continue;
        st += t[i];
        sy += std::log(y[i]);
        ++n;
    }
    if (n < 3) {
        r.message = "fewer than three positive points";
        return r;
    }
    const double tm = st / n, ym = sy / n;
    double stt = 0.0, sty = 0.0;
    bool first = true;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(y[i] > 0.0)) continue;
        const double dt = t[i] - tm;
        stt += dt * dt;
        sty += dt * (std::log(y[i]) - ym);
        if (first) r.t_start = t[i];
        first = false;
        r.t_end = t[i];
    }
    if (!(stt > 0.0)) {
        r.message = "degenerate time points";
        return r;
    }
    const double slope = sty / stt;
    const double intercept = ym - slope * tm;
    double ss = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(y[i] > 0.0)) continue;
        const double e = std::log(y[i]) - (intercept + slope * t[i]);
        ss += e * e;
    }
    r.rate = -slope;
    r.amplitude = std::exp(intercept);
    r.n_points = n;
    r.rms_residual = std::sqrt(ss / n);
    r.ok = true;
    return r;
}

RateReport fit_cooling_rate(const Trajectory& traj, const FitWindow& window) {
    RateReport fail;
    if (window.emitter >= traj.envelopes.size()) {
        fail.message = "no envelope tracked for emitter " + std::to_string(window.emitter);
        return fail;
    }
    const Envelope& env = traj.envelopes[window.emitter];
    double t_max = window.t_max;
    if (!std::isnan(env.first_zero_crossing) && env.first_zero_crossing <= t_max) {
        if (!window.stop_at_zero_crossing && env.first_zero_crossing >= window.t_min) {
            std::ostringstream msg;
            msg << "w crosses zero at t = " << env.first_zero_crossing << " inside the fit window";
            fail.message = msg.str();
            return fail;
        }
        t_max = env.first_zero_crossing;
    }
    std::vector<double> t, w;
    for (const auto& pt : env.points) {
        const double a = std::abs(pt.w);
        if (pt.t < window.t_min || pt.t > t_max || a > window.w_max || a < window.w_min) continue;
        t.push_back(pt.t);
        w.push_back(a);
    }
    RateReport r = fit_log_linear(t, w);
    if (!r.ok) return r;
    const double period = std::numbers::pi / w.back();
    if (r.t_end - r.t_start < period) {
        RateReport shorter;
        std::ostringstream msg;
        msg << "window spans " << (r.t_end - r.t_start) << " < one Doppler period " << period;
        shorter.message = msg.str();
        return shorter;
    }
    return r;
}

std::vector<EnvelopePoint> envelope_from_samples(std::span<const double> t, std::span<const double> theta) {
    std::vector<EnvelopePoint> out;
    if (t.size() < 2 || t.size() != theta.size()) return out;
    constexpr double pi = std::numbers::pi;
    double cell = std::floor(theta[0] / pi);
    double last = theta[0] == cell * pi ? t[0] : kNaN;
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double c1 = std::floor(theta[i] / pi);
        while (c1 != cell) {
            const bool up = c1 > cell;
            const double boundary = (up ? cell + 1.0 : cell) * pi;
            const double s = (boundary - theta[i - 1]) / (theta[i] - theta[i - 1]);
            const double tc = t[i - 1] + s * (t[i] - t[i - 1]);
            if (!std::isnan(last) && tc > last)
                out.push_back({0.5 * (tc + last), (up ? pi : -pi) / (tc - last)});
            last = tc;
            cell += up ? 1.0 : -1.0;
        }
    }
    return out;
}

}  // namespace purcell::dynamics
