#include "filmsim/slow_manifold.hpp"

#include <stdexcept>

namespace filmsim {

namespace {

void require_positive_depth(double h) {
    if (!(h > 0.0)) throw std::domain_error("filmsim: depth must be positive");
}

}  // namespace

LayerVelocities lift_velocities(const MacroPoint& q, const ModelParams& m) {
    require_positive_depth(q.h);
    const double h = q.h, u = q.u;
    const double h2 = h * h;
    // Every non-mean term appears with opposite signs in the two layers, so
    // the layers are written as mean -/+ offset and the restriction is exact.
    const double offset = (coeffs::lift_upper - 1.0) * u -
                          coeffs::lift_slope * m.re * h2 * (m.tan_theta - q.dh) +
                          0.0468 * h2 * q.d2u + 0.205 * h * q.dh * q.du -
                          0.0700 * h * u * q.d2h -
                          m.re * (0.00465 * h2 * u * q.du - 0.0115 * h * u * u * q.dh -
                                  0.0105 * h2 * h * q.dh * q.d2h);
    return {u - offset, u + offset};
}

LayerRates lift_rates(const MacroPoint& q, const ModelParams& m) {
    require_positive_depth(q.h);
    const double h = q.h, u = q.u, dh = q.dh, d2h = q.d2h, du = q.du, d2u = q.d2u;
    const double re = m.re, tt = m.tan_theta;
    const double h2 = h * h, h3 = h2 * h;
    LayerRates out{};
    out.du1_dt = 0.489 * (tt - dh) - 1.482 * u / (re * h2) - 0.904 * u * du +
                 (2.552 * d2u + 3.077 * dh * du / h - 0.650 * u * d2h / h) / re +
                 re * (0.0167 * h3 * d2u + 0.0438 * h2 * dh * d2h + 0.0359 * h * u * dh * dh) -
                 re * tt * (0.0298 * h * u * dh + 0.0184 * h2 * du);
    out.du2_dt = 1.168 * (tt - dh) - 3.526 * u / (re * h2) - 2.107 * u * du +
                 (5.701 * d2u + 6.962 * dh * du / h - 0.312 * u * d2h / h) / re -
                 re * (0.00819 * h3 * d2u + 0.0482 * h2 * dh * d2h + 0.0875 * h * u * dh * dh) +
                 re * tt * (0.0847 * h * u * dh + 0.0355 * h2 * du);
    return out;
}

EdgeLift edge_lift(double u_edge, double h_edge, const ModelParams& m, bool include_h2) {
    require_positive_depth(h_edge);
    const double h2 = include_h2 ? h_edge * h_edge : 1.0;
    const double offset = (coeffs::lift_upper - 1.0) * u_edge -
                          coeffs::lift_slope * m.re * h2 * m.tan_theta;
    EdgeLift out{};
    out.u1 = u_edge - offset;
    out.u2 = u_edge + offset;
    const double drag_scale = u_edge / (m.re * h_edge * h_edge);
    out.du1_dt = -coeffs::rate_drag_lower * drag_scale + coeffs::rate_grav_lower * m.tan_theta;
    out.du2_dt = -coeffs::rate_drag_upper * drag_scale + coeffs::rate_grav_upper * m.tan_theta;
    return out;
}

MacroRates one_layer_rhs(const MacroPoint& q, const ModelParams& m) {
    require_positive_depth(q.h);
    MacroRates out{};
    out.dh_dt = -(q.dh * q.u + q.h * q.du);
    out.du_dt = coeffs::one_layer_gravity * (m.tan_theta - q.dh) -
                coeffs::one_layer_drag * q.u / (m.re * q.h * q.h) -
                coeffs::one_layer_advection * q.u * q.du -
                coeffs::one_layer_slope * q.u * q.u / q.h * q.dh;
    return out;
}

}  // namespace filmsim
