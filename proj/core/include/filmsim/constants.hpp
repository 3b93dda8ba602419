#pragma once

#include <array>

// Printed model coefficients of the two-layer thin-film equations and the
// derived one-layer closure.  The coefficients are model constants, kept
// exactly at their three to four significant digits; nothing is re-derived.

namespace filmsim::coeffs {

// Gravity forcing, multiplies (tan_theta - dh/dx).
inline constexpr double gravity_lower = 0.826;
inline constexpr double gravity_upper = 1.002;

// Bed-drag matrix, multiplies (u1, u2)/(re h^2).
inline constexpr double drag11 = -19.3;
inline constexpr double drag12 = 6.98;
inline constexpr double drag21 = 6.98;
inline constexpr double drag22 = -5.36;

// Nonlinear advection, order: u1*du1, u2*du2, u2*du1, u1*du2.
inline constexpr std::array<double, 4> advection_lower = {-1.48, -0.225, 0.142, 0.0728};
inline constexpr std::array<double, 4> advection_upper = {-1.25, -1.57, 0.768, 0.930};

// Slope-shear term ((u1-u2)/h)(c0*u1 + c1*u2) dh/dx.
inline constexpr std::array<double, 2> shear_lower = {-0.25, 0.34};
inline constexpr std::array<double, 2> shear_upper = {-0.78, 0.38};

// Bare dispersion matrix, multiplies (d2u1, d2u2)/re.  The regularised
// model replaces this by dispersion - C*drag (see model.cpp).
inline constexpr double disp11 = -3.84;
inline constexpr double disp12 = 2.52;
inline constexpr double disp21 = -1.98;
inline constexpr double disp22 = 5.23;

// Equilibrium shear velocities (u1*, u2*) = (eq_lower, eq_upper)*re*tan_theta.
inline constexpr double eq_lower = 0.209;
inline constexpr double eq_upper = 0.459;

// One-layer slow-manifold lifting: u1 = lift_lower*u + ..., u2 = lift_upper*u - ...
inline constexpr double lift_lower = 0.587;
inline constexpr double lift_upper = 1.413;
inline constexpr double lift_slope = 0.0129;  // multiplies re (h^2) (tan_theta - dh)

// Edge lifting rates: du_j/dt = -rate_drag_j*u/(re h^2) + rate_grav_j*tan_theta.
inline constexpr double rate_drag_lower = 1.482;
inline constexpr double rate_grav_lower = 0.489;
inline constexpr double rate_drag_upper = 3.526;
inline constexpr double rate_grav_upper = 1.168;

// One-layer momentum equation coefficients.
inline constexpr double one_layer_gravity = 0.829;
inline constexpr double one_layer_drag = 2.504;
inline constexpr double one_layer_advection = 1.505;
inline constexpr double one_layer_slope = 0.151;

// Partial sums of the homotopy power series for six model coefficients,
// kept as a validation fixture.  Row q holds the series truncated after
// the gamma^q term, evaluated at gamma = 1.  Columns: dh coefficient in
// the lower/upper momentum equation, then the four drag entries
// (u1 in lower, u1 in upper, u2 in lower, u2 in upper).
inline constexpr int gamma_series_orders = 7;
inline constexpr std::array<std::array<double, 6>, gamma_series_orders> gamma_partial_sums = {{
    {-0.75, -1.125, 0.0, 0.0, 0.0, 0.0},
    {-0.7938, -0.930, -18.0, 15.0, 6.0, -9.0},
    {-0.8302, -1.004, -19.35, 6.712, 7.050, -5.288},
    {-0.8258, -1.002, -19.42, 6.933, 7.012, -5.333},
    {-0.8259, -1.002, -19.34, 6.960, 6.990, -5.350},
    {-0.8256, -1.002, -19.32, 6.974, 6.982, -5.356},
    {-0.8255, -1.002, -19.32, 6.977, 6.980, -5.357},
}};

// The fully converged (highest-order) coefficients above must round to the
// values used in the evolution equations, with this many decimal digits.
inline constexpr std::array<double, 6> gamma_series_limits = {
    -gravity_lower, -gravity_upper, drag11, drag21, drag12, drag22};
inline constexpr std::array<int, 6> gamma_series_round_digits = {3, 3, 1, 2, 2, 2};

}  // namespace filmsim::coeffs
