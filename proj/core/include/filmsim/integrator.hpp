#pragma once

#include <functional>
#include <span>
#include <vector>

namespace filmsim {

/// Controls for the adaptive implicit integrator.
struct IntegratorConfig {
    double rtol = 1e-6;
    double atol = 1e-9;
    double initial_step = 0.0;       ///< 0 selects the step automatically
    double max_step = 0.0;           ///< 0 means no cap beyond the span
    int max_newton_iterations = 8;   ///< per stage, before a Jacobian refresh

    void validate() const;  ///< throws std::invalid_argument
};

using RhsFn = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;
using Observer = std::function<void(double t, std::span<const double> y)>;

struct IntegrateStats {
    long steps = 0;
    long rejected_steps = 0;
    long rhs_evaluations = 0;
    long jacobian_evaluations = 0;
    long newton_iterations = 0;
};

struct IntegrationResult {
    std::vector<double> y;   ///< state at the end of the span
    IntegrateStats stats;
};

/// Integrates dy/dt = rhs(t, y) over [t0, t1] with the one-step L-stable
/// trapezoidal/BDF2 pair: embedded third-order error estimate, modified
/// Newton stages sharing one LU factorisation, finite-difference Jacobians
/// reused until convergence degrades.  The observer is called at each
/// requested time (ascending, within [t0, t1]) through cubic Hermite dense
/// output.  Deterministic: identical inputs give identical trajectories.
/// Throws std::runtime_error on step-size underflow (stiffness/blow-up,
/// message carries the time) or persistent Newton failure.
IntegrationResult integrate(const RhsFn& rhs, std::span<const double> y0, double t0, double t1,
                            const IntegratorConfig& cfg = {},
                            std::span<const double> observe_times = {},
                            const Observer& observer = {});

}  // namespace filmsim
