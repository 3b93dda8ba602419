#pragma once

#include <span>
#include <vector>

namespace filmsim {

/// Solves a tridiagonal system by the Thomas algorithm.
/// lower[i], diag[i], upper[i] hold row i (lower[0] and upper[n-1] unused).
/// Requires a diagonally dominant system; throws std::runtime_error on a
/// vanishing pivot.
std::vector<double> solve_tridiagonal(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs);

/// Solves a cyclic tridiagonal system (row 0 couples to n-1 and vice versa)
/// by the Thomas algorithm with a Sherman-Morrison rank-one correction.
/// lower[0] is the (0, n-1) entry and upper[n-1] the (n-1, 0) entry.
/// Requires n >= 3 and diagonal dominance.
std::vector<double> solve_cyclic_tridiagonal(std::span<const double> lower,
                                             std::span<const double> diag,
                                             std::span<const double> upper,
                                             std::span<const double> rhs);

}  // namespace filmsim
