#pragma once

// Adaptive Dormand-Prince 5(4) integrator with dense output.

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "purcell/dynamics/rhs.hpp"

namespace purcell::dynamics {

struct StepControls {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double t_end = 1.0;
    double max_step = std::numeric_limits<double>::infinity();
    double initial_step = 0.0;  // 0 picks a step from the initial derivative
    double stride = 0.0;        // sample spacing; 0 samples only the end points
    std::size_t max_steps = 4'000'000'000;
};

struct IntegratorStats {
    std::size_t steps = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evals = 0;
    double smallest_step = std::numeric_limits<double>::infinity();
    double largest_step = 0.0;
    double t_final = 0.0;
    bool stopped_early = false;  // a step observer requested the stop
};

/// Thrown when the step size underflows. `component` is the state index with
/// the largest scaled error at the failing step.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double t, std::size_t component)
        : std::runtime_error(what), t_(t), component_(component) {}
    double t() const noexcept { return t_; }
    std::size_t component() const noexcept { return component_; }

private:
    double t_;
    std::size_t component_;
};

/// Called at t0 + k stride (dense output) and at the final time.
using SampleFn = std::function<void(double t, std::span<const double> y)>;

/// Called after every accepted step; returning false ends the integration at
/// t_new (which is then sampled).
using StepObserver = std::function<bool(double t_old, std::span<const double> y_old, double t_new,
                                        std::span<const double> y_new)>;

/// Advances y from t0 to controls.t_end (or until the observer stops it).
/// Deterministic: no global state, fixed evaluation order.
IntegratorStats integrate_dopri5(const RhsFn& rhs, std::vector<double>& y, double t0,
                                 const StepControls& controls, const SampleFn& on_sample = {},
                                 const StepObserver& on_step = {});

}  // namespace purcell::dynamics
