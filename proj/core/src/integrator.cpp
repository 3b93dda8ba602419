#include "filmsim/integrator.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace filmsim {

void IntegratorConfig::validate() const {
    if (!(rtol > 0.0) || !(atol > 0.0))
        throw std::invalid_argument("filmsim: rtol and atol must be > 0");
    if (initial_step < 0.0 || max_step < 0.0)
        throw std::invalid_argument("filmsim: step limits must be >= 0");
    if (max_newton_iterations < 1)
        throw std::invalid_argument("filmsim: max_newton_iterations must be >= 1");
}

namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Trapezoidal/BDF2 one-step pair with intermediate abscissa 2 - sqrt(2):
// both implicit stages share the iteration matrix I - d*h*J.
const double kGamma = 2.0 - std::sqrt(2.0);
const double kStageCoeff = kGamma / 2.0;                        // = (1-gamma)/(2-gamma)
const double kBdfY1 = 1.0 / (kGamma * (2.0 - kGamma));
const double kBdfY0 = (1.0 - kGamma) * (1.0 - kGamma) / (kGamma * (2.0 - kGamma));
// Error-estimate weights (difference to the embedded third-order solution).
const double kErr0 = (std::sqrt(2.0) - 1.0) / 3.0;
const double kErr1 = -1.0 / 3.0;
const double kErr2 = (2.0 - std::sqrt(2.0)) / 3.0;

struct Workspace {
    const RhsFn& rhs;
    IntegrateStats& stats;
    Vec scratch;

    void eval(double t, const Vec& y, Vec& out) {
        rhs(t, std::span<const double>(y.data(), y.size()),
            std::span<double>(out.data(), out.size()));
        ++stats.rhs_evaluations;
    }
};

double wrms(const Vec& v, const Vec& scale) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double w = v[i] / scale[i];
        acc += w * w;
    }
    return std::sqrt(acc / static_cast<double>(v.size()));
}

}  // namespace

IntegrationResult integrate(const RhsFn& rhs, std::span<const double> y0, double t0, double t1,
                            const IntegratorConfig& cfg, std::span<const double> observe_times,
                            const Observer& observer) {
    cfg.validate();
    if (!(t1 > t0)) throw std::invalid_argument("filmsim: integration span must be increasing");
    const Eigen::Index n = static_cast<Eigen::Index>(y0.size());
    if (n == 0) throw std::invalid_argument("filmsim: empty state");

    IntegrationResult result;
    IntegrateStats& stats = result.stats;
    Workspace ws{rhs, stats, Vec(n)};

    Vec y = Eigen::Map<const Vec>(y0.data(), n);
    Vec f0(n);
    ws.eval(t0, y, f0);
    if (!f0.allFinite())
        throw std::runtime_error("filmsim: right-hand side not finite at the initial state");

    const double span = t1 - t0;
    const double hmax = cfg.max_step > 0.0 ? std::min(cfg.max_step, span) : span;
    const double hmin = 1e-14 * span;

    // Initial step: explicit-Euler curvature probe, as small as the
    // tolerances ask for.
    double h;
    if (cfg.initial_step > 0.0) {
        h = std::min(cfg.initial_step, hmax);
    } else {
        Vec scale = (cfg.atol + cfg.rtol * y.cwiseAbs().array()).matrix();
        const double d0 = wrms(y, scale);
        const double d1 = wrms(f0, scale);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * span : 0.01 * d0 / d1;
        h0 = std::min(h0, hmax);
        Vec y_probe = y + h0 * f0;
        Vec f_probe(n);
        ws.eval(t0 + h0, y_probe, f_probe);
        const double d2 = wrms(f_probe - f0, scale) / h0;
        double h1 = (std::max(d1, d2) <= 1e-15)
                        ? std::max(1e-6 * span, h0 * 1e-3)
                        : std::pow(0.01 / std::max(d1, d2), 1.0 / 3.0);
        h = std::clamp(std::min(100.0 * h0, h1), hmin, hmax);
    }

    // Jacobian and iteration-matrix state.
    Mat jac(n, n);
    Eigen::PartialPivLU<Mat> lu;
    bool have_jac = false;
    bool jac_fresh = false;
    double lu_h = -1.0;

    const auto refresh_jacobian = [&](double t, const Vec& at, const Vec& f_at) {
        Vec yp = at;
        Vec fp(n);
        for (Eigen::Index j = 0; j < n; ++j) {
            const double delta = std::sqrt(std::numeric_limits<double>::epsilon()) *
                                 (std::abs(at[j]) + 1e-3);
            yp[j] = at[j] + delta;
            ws.eval(t, yp, fp);
            jac.col(j) = (fp - f_at) / delta;
            yp[j] = at[j];
        }
        ++stats.jacobian_evaluations;
        have_jac = true;
        jac_fresh = true;
        lu_h = -1.0;
    };

    const auto factor = [&](double step) {
        Mat m = Mat::Identity(n, n) - (kStageCoeff * step) * jac;
        lu.compute(m);
        lu_h = step;
    };

    // Newton solve of Y = base + c*h*f(t, Y); returns convergence and f(Y).
    Vec stage_f(n), delta(n), residual(n);
    const auto solve_stage = [&](double t_stage, const Vec& base, double ch, Vec& Y,
                                 const Vec& scale) -> bool {
        double last_norm = -1.0;
        for (int it = 0; it < cfg.max_newton_iterations; ++it) {
            ws.eval(t_stage, Y, stage_f);
            ++stats.newton_iterations;
            residual = Y - base - ch * stage_f;
            if (!residual.allFinite()) return false;
            delta = lu.solve(residual);
            Y -= delta;
            const double norm = wrms(delta, scale);
            if (!std::isfinite(norm)) return false;
            // Tight stage tolerance: stage residuals feed straight into
            // conserved quantities, so they are held well below the local
            // error allowance.
            if (norm < 1e-3) {
                ws.eval(t_stage, Y, stage_f);
                return stage_f.allFinite();
            }
            if (last_norm >= 0.0 && norm > 0.9 * last_norm && it >= 1) return false;
            last_norm = norm;
        }
        return false;
    };

    std::size_t obs_idx = 0;
    const auto emit_observations_until = [&](double t_new, double step, const Vec& y_old,
                                             const Vec& f_old, const Vec& y_new,
                                             const Vec& f_new) {
        while (obs_idx < observe_times.size() && observe_times[obs_idx] <= t_new + 1e-12 * span) {
            const double t_obs = observe_times[obs_idx];
            const double s = std::clamp((t_obs - (t_new - step)) / step, 0.0, 1.0);
            // Cubic Hermite between the step ends.
            const double s2 = s * s, s3 = s2 * s;
            ws.scratch = (2 * s3 - 3 * s2 + 1) * y_old + (s3 - 2 * s2 + s) * step * f_old +
                         (-2 * s3 + 3 * s2) * y_new + (s3 - s2) * step * f_new;
            if (observer)
                observer(t_obs, std::span<const double>(ws.scratch.data(), ws.scratch.size()));
            ++obs_idx;
        }
    };

    // Observations at or before the start land on the initial state.
    while (obs_idx < observe_times.size() && observe_times[obs_idx] <= t0 + 1e-12 * span) {
        if (observer) observer(observe_times[obs_idx], y0);
        ++obs_idx;
    }

    double t = t0;
    Vec y1(n), y2(n), f1(n), f2(n), err(n);
    int consecutive_failures = 0;

    while (t < t1 - 1e-12 * span) {
        h = std::min(h, t1 - t);
        if (h < hmin)
            throw std::runtime_error("filmsim: step size underflow at t = " + std::to_string(t));

        if (!have_jac) refresh_jacobian(t, y, f0);
        if (lu_h < 0.0 || std::abs(h - lu_h) > 0.2 * lu_h) factor(h);

        Vec scale = (cfg.atol + cfg.rtol * y.cwiseAbs().array()).matrix();

        // Trapezoidal stage to t + gamma*h.
        const Vec base1 = y + (kStageCoeff * h) * f0;
        y1 = y + (kGamma * h) * f0;
        bool ok = solve_stage(t + kGamma * h, base1, kStageCoeff * h, y1, scale);
        if (ok) {
            f1 = stage_f;
            // BDF2 stage to t + h.
            const Vec base2 = kBdfY1 * y1 - kBdfY0 * y;
            y2 = y1 + ((1.0 - kGamma) * h) * f1;
            ok = solve_stage(t + h, base2, kStageCoeff * h, y2, scale);
            if (ok) f2 = stage_f;
        }

        if (!ok) {
            ++stats.rejected_steps;
            ++consecutive_failures;
            if (consecutive_failures > 20)
                throw std::runtime_error("filmsim: Newton iteration failed to converge near t = " +
                                         std::to_string(t));
            if (!jac_fresh) {
                refresh_jacobian(t, y, f0);
                factor(h);
            } else {
                h *= 0.25;
            }
            continue;
        }

        // Filtered local error estimate.
        err = h * (kErr0 * f0 + kErr1 * f1 + kErr2 * f2);
        err = lu.solve(err);
        Vec scale_new = (cfg.atol +
                         cfg.rtol * y.cwiseAbs().cwiseMax(y2.cwiseAbs()).array())
                            .matrix();
        const double err_norm = wrms(err, scale_new);

        if (!std::isfinite(err_norm) || err_norm > 1.0) {
            ++stats.rejected_steps;
            ++consecutive_failures;
            if (consecutive_failures > 30)
                throw std::runtime_error("filmsim: persistent error-test failures near t = " +
                                         std::to_string(t));
            const double shrink = std::isfinite(err_norm)
                                      ? std::max(0.2, 0.9 * std::pow(err_norm, -1.0 / 3.0))
                                      : 0.2;
            h = std::max(h * std::min(shrink, 0.9), hmin);
            continue;
        }

        // Accept.
        const double t_new = std::min(t + h, t1);
        emit_observations_until(t_new, h, y, f0, y2, f2);
        t = t_new;
        y.swap(y2);
        f0.swap(f2);
        jac_fresh = false;
        consecutive_failures = 0;
        ++stats.steps;

        const double grow = 0.9 * std::pow(std::max(err_norm, 1e-10), -1.0 / 3.0);
        h = std::clamp(h * std::clamp(grow, 0.2, 5.0), hmin, hmax);
    }

    // Any observation times at the very end (or beyond, by request order).
    while (obs_idx < observe_times.size()) {
        if (observer) observer(observe_times[obs_idx], std::span<const double>(y.data(), n));
        ++obs_idx;
    }

    result.y.assign(y.data(), y.data() + n);
    return result;
}

}  // namespace filmsim
