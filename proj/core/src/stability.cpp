#include "filmsim/stability.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "filmsim/constants.hpp"
#include "filmsim/parallel.hpp"

namespace filmsim {

namespace {

void require_positive_re(double re) {
    if (!(re > 0.0)) throw std::invalid_argument("filmsim: re must be > 0");
}

std::array<Complex, 3> sort_descending(std::array<Complex, 3> v) {
    std::sort(v.begin(), v.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    return v;
}

Eigen::Matrix3cd to_eigen(const Matrix3c& M) {
    Eigen::Matrix3cd E;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) E(i, j) = M[i][j];
    return E;
}

}  // namespace

std::pair<double, double> equilibrium_velocities(double re, double tan_theta) {
    require_positive_re(re);
    return {coeffs::eq_lower * re * tan_theta, coeffs::eq_upper * re * tan_theta};
}

Matrix3c stability_matrix(double re, double tan_theta, double k, double c_reg) {
    require_positive_re(re);
    if (!(k >= 0.0)) throw std::invalid_argument("filmsim: wavenumber k must be >= 0");
    using namespace coeffs;
    const Complex ik(0.0, k);
    const double rt = re * tan_theta;
    const double k2 = k * k;
    // Regularised dispersion coefficients.
    const double dc11 = disp11 - c_reg * drag11;
    const double dc12 = disp12 - c_reg * drag12;
    const double dc21 = disp21 - c_reg * drag21;
    const double dc22 = disp22 - c_reg * drag22;
    Matrix3c M{};
    M[0][0] = -0.334 * rt * ik;
    M[0][1] = -0.5 * ik;
    M[0][2] = -0.5 * ik;
    M[1][0] = -(gravity_lower + 0.0259 * rt) * ik;
    M[1][1] = (drag11 - dc11 * k2) / re - 0.244 * rt * ik;
    M[1][2] = (drag12 - dc12 * k2) / re - 0.088 * rt * ik;
    M[2][0] = -(gravity_upper + 0.0029 * rt) * ik;
    M[2][1] = (drag21 - dc21 * k2) / re + 0.935 * rt * ik;
    M[2][2] = (drag22 - dc22 * k2) / re - 0.526 * rt * ik;
    return M;
}

std::array<Complex, 3> characteristic_coefficients(const Matrix3c& M) {
    const Complex trace = M[0][0] + M[1][1] + M[2][2];
    const Complex minors = (M[1][1] * M[2][2] - M[1][2] * M[2][1]) +
                           (M[0][0] * M[2][2] - M[0][2] * M[2][0]) +
                           (M[0][0] * M[1][1] - M[0][1] * M[1][0]);
    const Complex det = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                        M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                        M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
    return {-trace, minors, -det};
}

std::array<Complex, 3> solve_monic_cubic(const std::array<Complex, 3>& c) {
    Eigen::Matrix3cd companion = Eigen::Matrix3cd::Zero();
    companion(0, 2) = -c[2];
    companion(1, 2) = -c[1];
    companion(2, 2) = -c[0];
    companion(1, 0) = 1.0;
    companion(2, 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(companion, false);
    std::array<Complex, 3> roots{};
    for (int i = 0; i < 3; ++i) roots[i] = solver.eigenvalues()(i);
    return sort_descending(roots);
}

std::array<Complex, 3> matrix_eigenvalues(const Matrix3c& M) {
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(to_eigen(M), false);
    std::array<Complex, 3> out{};
    for (int i = 0; i < 3; ++i) out[i] = solver.eigenvalues()(i);
    return sort_descending(out);
}

GrowthRates characteristic_roots(double re, double tan_theta, double k, double c_reg) {
    GrowthRates out;
    out.k = k;
    out.lambdas = solve_monic_cubic(characteristic_coefficients(
        stability_matrix(re, tan_theta, k, c_reg)));
    return out;
}

std::vector<GrowthRates> growth_rate_sweep(double re, double tan_theta, double c_reg,
                                           std::span<const double> k_grid) {
    std::vector<GrowthRates> out(k_grid.size());
    parallel_for(static_cast<int>(k_grid.size()), [&](int i) {
        out[i] = characteristic_roots(re, tan_theta, k_grid[i], c_reg);
    });
    return out;
}

double max_growth_rate(std::span<const GrowthRates> sweep) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& g : sweep) best = std::max(best, g.lambdas[0].real());
    return best;
}

double critical_regularisation(double re, double tan_theta, double k_max) {
    require_positive_re(re);
    if (!(k_max > 0.0)) throw std::invalid_argument("filmsim: k_max must be > 0");
    constexpr double k_step = 0.01;
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(k_max / k_step) + 1);
    for (double k = k_step; k <= k_max + 0.5 * k_step; k += k_step) grid.push_back(k);

    const auto unstable = [&](double c) {
        const auto sweep = growth_rate_sweep(re, tan_theta, c, grid);
        return max_growth_rate(sweep) > 1e-9;
    };

    double lo = 0.0, hi = 1.0;
    if (!unstable(lo) || unstable(hi))
        throw std::runtime_error(
            "filmsim: instability indicator does not bracket a sign change on C in [0, 1]");
    while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        (unstable(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> shear_mode_wavenumbers(int count) {
    if (count < 1) throw std::invalid_argument("filmsim: count must be >= 1");
    std::vector<double> roots;
    roots.reserve(count);
    roots.push_back(0.0);
    // x = tan x has one root per branch (q pi, q pi + pi/2); bisect on the
    // smooth surrogate sin x - x cos x, which brackets every branch.
    const auto f = [](double x) { return std::sin(x) - x * std::cos(x); };
    for (int q = 1; static_cast<int>(roots.size()) < count; ++q) {
        double lo = q * std::numbers::pi;
        double hi = lo + 0.5 * std::numbers::pi;
        const double flo = f(lo);
        for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            ((f(mid) > 0.0) == (flo > 0.0) ? lo : hi) = mid;
        }
        roots.push_back(lo + hi);  // kh = 2x
    }
    return roots;
}

}  // namespace filmsim
