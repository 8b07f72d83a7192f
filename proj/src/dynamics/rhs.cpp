#include "purcell/dynamics/rhs.hpp"

#include <cassert>
#include <cmath>

namespace purcell::dynamics {

namespace {

using core::cx;

// One emitter driven by `drive_amp` cos(theta). Writes `stride` derivatives.
template <bool Populations>
inline void emitter_rhs(const Params& p, cx drive_amp, const double* e, double* de, double cos_t,
                        double sin_t) {
    const cx beta{e[0], e[1]};
    const cx drive = drive_amp * cos_t;
    const double inversion = Populations ? e[2] - e[3] : 1.0;
    const cx dbeta = -cx(p.gamma_tot(), p.delta_a) * beta - cx(0.0, 1.0) * drive * inversion;
    de[0] = dbeta.real();
    de[1] = dbeta.imag();
    constexpr int kTheta = Populations ? 5 : 2;
    if constexpr (Populations) {
        const double exchange = 2.0 * std::imag(beta * std::conj(drive));
        de[2] = 2.0 * p.gamma * e[3] + exchange;
        de[3] = -2.0 * p.gamma_tot() * e[3] - exchange;
        de[4] = 2.0 * p.gamma_prime * e[3];
    }
    de[kTheta] = e[kTheta + 1];
    de[kTheta + 1] = 4.0 * p.omega_rec * sin_t * std::real(beta * std::conj(drive_amp));
}

template <bool Populations>
void free_space(const Params& p, std::span<const double> y, std::span<double> dydt) {
    constexpr int kTheta = Populations ? 5 : 2;
    assert(y.size() == (Populations ? 7u : 4u) && dydt.size() == y.size());
    const double theta = y[kTheta];
    emitter_rhs<Populations>(p, p.omega_drive, y.data(), dydt.data(), std::cos(theta),
                             std::sin(theta));
}

template <bool Populations>
void cavity(const Params& p, std::span<const double> y, std::span<double> dydt) {
    constexpr std::size_t stride = Populations ? 7 : 4;
    constexpr int kTheta = Populations ? 5 : 2;
    assert(y.size() >= 2 && (y.size() - 2) % stride == 0);
    const std::size_t n = (y.size() - 2) / stride;
    const cx alpha{y[0], y[1]};
    const cx field = p.g * alpha;

    // Emitters are visited in index order so the cavity source sum is
    // reduced in a fixed order.
    cx source{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
        const double* e = y.data() + 2 + j * stride;
        const double cos_t = std::cos(e[kTheta]);
        const double sin_t = std::sin(e[kTheta]);
        source += cos_t * cx(e[0], e[1]);
        emitter_rhs<Populations>(p, field, e, dydt.data() + 2 + j * stride, cos_t, sin_t);
    }
    const cx dalpha = -cx(p.kappa, p.delta_c) * alpha - cx(0.0, p.g) * source - p.eta;
    dydt[0] = dalpha.real();
    dydt[1] = dalpha.imag();
}

}  // namespace

void rhs_free_space_closed(const Params& p, std::span<const double> y, std::span<double> dydt) {
    free_space<false>(p, y, dydt);
}

void rhs_free_space_nonclosed(const Params& p, std::span<const double> y, std::span<double> dydt) {
    free_space<true>(p, y, dydt);
}

void rhs_cavity_closed(const Params& p, std::span<const double> y, std::span<double> dydt) {
    cavity<false>(p, y, dydt);
}

void rhs_cavity_nonclosed(const Params& p, std::span<const double> y, std::span<double> dydt) {
    cavity<true>(p, y, dydt);
}

void rhs_cavity_closed_many(const Params& p, std::span<const double> y, std::span<double> dydt) {
    cavity<false>(p, y, dydt);
}

void rhs_cavity_nonclosed_many(const Params& p, std::span<const double> y, std::span<double> dydt) {
    cavity<true>(p, y, dydt);
}

RhsFn make_rhs(const core::Scenario& s) {
    const Params p = s.params();
    using K = core::ScenarioKind;
    switch (s.kind()) {
        case K::FreeSpaceClosed:
            return [p](double, std::span<const double> y, std::span<double> d) { free_space<false>(p, y, d); };
        case K::FreeSpaceNonClosed:
            return [p](double, std::span<const double> y, std::span<double> d) { free_space<true>(p, y, d); };
        case K::CavityClosed:
        case K::CavityClosedMany:
            return [p](double, std::span<const double> y, std::span<double> d) { cavity<false>(p, y, d); };
        case K::CavityNonClosed:
        case K::CavityNonClosedMany:
            return [p](double, std::span<const double> y, std::span<double> d) { cavity<true>(p, y, d); };
    }
    return {};
}

}  // namespace purcell::dynamics
