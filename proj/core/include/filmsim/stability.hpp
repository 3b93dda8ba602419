#pragma once

#include <array>
#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace filmsim {

using Complex = std::complex<double>;
using Matrix3c = std::array<std::array<Complex, 3>, 3>;

/// Growth rates of the three linear modes at one wavenumber, sorted by
/// descending real part (ties by descending imaginary part).
struct GrowthRates {
    double k = 0.0;
    std::array<Complex, 3> lambdas{};
};

/// Equilibrium layer mean velocities (u1*, u2*) of the uniform shear flow.
std::pair<double, double> equilibrium_velocities(double re, double tan_theta);

/// The 3x3 linearisation matrix about the uniform shear equilibrium at
/// wavenumber k.  At c_reg = 0 the entries carry the bare coefficients; for
/// c_reg > 0 the dispersion entries carry the regularised coefficients.
Matrix3c stability_matrix(double re, double tan_theta, double k, double c_reg);

/// Monic characteristic coefficients {a2, a1, a0} of lambda^3 + a2 lambda^2
/// + a1 lambda + a0 built from the matrix (trace, principal minors,
/// determinant in complex arithmetic).
std::array<Complex, 3> characteristic_coefficients(const Matrix3c& M);

/// Roots of the monic cubic via a companion-matrix eigensolve.
std::array<Complex, 3> solve_monic_cubic(const std::array<Complex, 3>& coeffs);

/// Eigenvalues of the matrix by a direct complex eigensolve; the second
/// algebraic route used to cross-check characteristic_roots.
std::array<Complex, 3> matrix_eigenvalues(const Matrix3c& M);

/// The three growth rates at wavenumber k, from the characteristic cubic of
/// the stability matrix.
GrowthRates characteristic_roots(double re, double tan_theta, double k, double c_reg);

/// Growth rates over an ascending wavenumber grid; evaluated in parallel.
std::vector<GrowthRates> growth_rate_sweep(double re, double tan_theta, double c_reg,
                                           std::span<const double> k_grid);

/// Largest real part over a sweep.
double max_growth_rate(std::span<const GrowthRates> sweep);

/// Smallest regularisation coefficient C that suppresses every positive
/// growth rate for k in (0, k_max], located by bisection to 1e-3.
/// Throws std::runtime_error if the instability indicator does not change
/// sign on C in [0, 1].
double critical_regularisation(double re, double tan_theta, double k_max = 50.0);

/// First `count` nonnegative solutions of kh/2 = tan(kh/2), returned as kh.
std::vector<double> shear_mode_wavenumbers(int count);

}  // namespace filmsim
