#include "filmsim/tridiagonal.hpp"

#include <cmath>
#include <stdexcept>

namespace filmsim {

namespace {

void check_sizes(std::span<const double> lower, std::span<const double> diag,
                 std::span<const double> upper, std::span<const double> rhs,
                 std::size_t minimum) {
    const std::size_t n = diag.size();
    if (n < minimum || lower.size() != n || upper.size() != n || rhs.size() != n)
        throw std::invalid_argument("filmsim: inconsistent tridiagonal system sizes");
}

}  // namespace

std::vector<double> solve_tridiagonal(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs) {
    check_sizes(lower, diag, upper, rhs, 1);
    const std::size_t n = diag.size();
    std::vector<double> b(diag.begin(), diag.end());
    std::vector<double> d(rhs.begin(), rhs.end());
    for (std::size_t i = 1; i < n; ++i) {
        if (b[i - 1] == 0.0) throw std::runtime_error("filmsim: tridiagonal pivot vanished");
        const double w = lower[i] / b[i - 1];
        b[i] -= w * upper[i - 1];
        d[i] -= w * d[i - 1];
    }
    if (b[n - 1] == 0.0) throw std::runtime_error("filmsim: tridiagonal pivot vanished");
    std::vector<double> x(n);
    x[n - 1] = d[n - 1] / b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = (d[i] - upper[i] * x[i + 1]) / b[i];
    return x;
}

std::vector<double> solve_cyclic_tridiagonal(std::span<const double> lower,
                                             std::span<const double> diag,
                                             std::span<const double> upper,
                                             std::span<const double> rhs) {
    check_sizes(lower, diag, upper, rhs, 3);
    const std::size_t n = diag.size();
    const double alpha = lower[0];    // corner (0, n-1)
    const double beta = upper[n - 1]; // corner (n-1, 0)

    // A = T + u v^T with u = (g, 0, .., beta)^T and v = e_0 + (alpha/g) e_{n-1}.
    const double g = -diag[0];
    std::vector<double> b(diag.begin(), diag.end());
    b[0] -= g;
    b[n - 1] -= alpha * beta / g;

    std::vector<double> u(n, 0.0);
    u[0] = g;
    u[n - 1] = beta;

    const auto solve = [&](std::span<const double> d) {
        return solve_tridiagonal(lower, b, upper, d);
    };
    const std::vector<double> y = solve(rhs);
    const std::vector<double> z = solve(u);

    const double vy = y[0] + alpha / g * y[n - 1];
    const double vz = z[0] + alpha / g * z[n - 1];
    const double factor = vy / (1.0 + vz);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] - factor * z[i];
    return x;
}

}  // namespace filmsim
