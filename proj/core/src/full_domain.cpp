#include "filmsim/full_domain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "filmsim/tridiagonal.hpp"

namespace filmsim {

FullGrid FullGrid::make(double length, int n_cells) {
    if (!(length > 0.0)) throw std::invalid_argument("filmsim: grid length must be > 0");
    if (n_cells < 8 || n_cells % 2 != 0)
        throw std::invalid_argument("filmsim: n_cells must be even and >= 8");
    return {length, n_cells};
}

FlowField FlowField::uniform(const FullGrid& grid, double h0, double u1_0, double u2_0) {
    FlowField f;
    f.grid = grid;
    f.h.assign(grid.h_count(), h0);
    f.u1.assign(grid.u_count(), u1_0);
    f.u2.assign(grid.u_count(), u2_0);
    return f;
}

void FlowField::to_flat(std::span<double> out) const {
    if (out.size() != size()) throw std::invalid_argument("filmsim: flat buffer size mismatch");
    auto it = std::copy(h.begin(), h.end(), out.begin());
    it = std::copy(u1.begin(), u1.end(), it);
    std::copy(u2.begin(), u2.end(), it);
}

void FlowField::from_flat(std::span<const double> in) {
    if (in.size() != size()) throw std::invalid_argument("filmsim: flat buffer size mismatch");
    auto it = in.begin();
    std::copy(it, it + h.size(), h.begin());
    it += h.size();
    std::copy(it, it + u1.size(), u1.begin());
    it += u1.size();
    std::copy(it, it + u2.size(), u2.begin());
}

namespace {

int wrap(int i, int n) { return ((i % n) + n) % n; }

}  // namespace

PointState stencil_derivatives(const FlowField& f, int point_index) {
    const int nh = f.grid.h_count();
    const int nu = f.grid.u_count();
    const double d = f.grid.spacing();
    const int i = wrap(point_index, f.grid.n_cells);
    PointState p{};
    if (i % 2 == 0) {
        const int q = i / 2;  // h index
        p.h = f.h[q];
        p.dh = (f.h[wrap(q + 1, nh)] - f.h[wrap(q - 1, nh)]) / (4.0 * d);
        p.d2h = (f.h[wrap(q + 1, nh)] - 2.0 * f.h[q] + f.h[wrap(q - 1, nh)]) / (4.0 * d * d);
        // velocity neighbours sit at i-1 (index q-1) and i+1 (index q)
        const int ql = wrap(q - 1, nu), qr = q;
        p.u1 = 0.5 * (f.u1[ql] + f.u1[qr]);
        p.u2 = 0.5 * (f.u2[ql] + f.u2[qr]);
        p.du1 = (f.u1[qr] - f.u1[ql]) / (2.0 * d);
        p.du2 = (f.u2[qr] - f.u2[ql]) / (2.0 * d);
    } else {
        const int q = (i - 1) / 2;  // velocity index
        p.u1 = f.u1[q];
        p.u2 = f.u2[q];
        p.du1 = (f.u1[wrap(q + 1, nu)] - f.u1[wrap(q - 1, nu)]) / (4.0 * d);
        p.du2 = (f.u2[wrap(q + 1, nu)] - f.u2[wrap(q - 1, nu)]) / (4.0 * d);
        p.d2u1 = (f.u1[wrap(q + 1, nu)] - 2.0 * f.u1[q] + f.u1[wrap(q - 1, nu)]) / (4.0 * d * d);
        p.d2u2 = (f.u2[wrap(q + 1, nu)] - 2.0 * f.u2[q] + f.u2[wrap(q - 1, nu)]) / (4.0 * d * d);
        // h neighbours at i-1 (index q) and i+1 (index q+1)
        const int pl = q, pr = wrap(q + 1, nh);
        p.h = 0.5 * (f.h[pl] + f.h[pr]);
        p.dh = (f.h[pr] - f.h[pl]) / (2.0 * d);
    }
    return p;
}

void full_rhs(const FlowField& f, const ModelParams& m, FlowField& dfdt,
              RegularisationForm form) {
    const int nh = f.grid.h_count();
    const int nu = f.grid.u_count();
    const double d = f.grid.spacing();
    if (static_cast<int>(f.h.size()) != nh || static_cast<int>(f.u1.size()) != nu ||
        static_cast<int>(f.u2.size()) != nu)
        throw std::invalid_argument("filmsim: field sizes do not match the grid");
    for (const double h : f.h)
        if (!(h > 0.0)) throw std::domain_error("filmsim: depth must stay positive");

    dfdt.grid = f.grid;
    dfdt.h.resize(nh);
    dfdt.u1.resize(nu);
    dfdt.u2.resize(nu);

    ModelParams point_params = m;
    if (form == RegularisationForm::OperatorBare) point_params.c_reg = 0.0;

    // Velocity rates from the pointwise model at every velocity point.
    std::vector<double> flux(nu);
    for (int q = 0; q < nu; ++q) {
        const PointState p = stencil_derivatives(f, 2 * q + 1);
        dfdt.u1[q] = rhs_u1(p, point_params);
        dfdt.u2[q] = rhs_u2(p, point_params);
        flux[q] = p.h * 0.5 * (p.u1 + p.u2);
    }

    if (form != RegularisationForm::RhsFolded && m.c_reg > 0.0) {
        // Cyclic operator rows [-C h_{i-1}^2, 4d^2 + C(h_{i-1}^2 + h_{i+1}^2),
        // -C h_{i+1}^2] / 4d^2 over velocity points; h neighbours of velocity
        // point q are h[q] and h[q+1].
        const double s = 1.0 / (4.0 * d * d);
        std::vector<double> lower(nu), diag(nu), upper(nu);
        for (int q = 0; q < nu; ++q) {
            const double hl2 = f.h[q] * f.h[q];
            const double hr2 = f.h[wrap(q + 1, nh)] * f.h[wrap(q + 1, nh)];
            lower[q] = -m.c_reg * hl2 * s;
            diag[q] = 1.0 + m.c_reg * (hl2 + hr2) * s;
            upper[q] = -m.c_reg * hr2 * s;
        }
        dfdt.u1 = solve_cyclic_tridiagonal(lower, diag, upper, dfdt.u1);
        dfdt.u2 = solve_cyclic_tridiagonal(lower, diag, upper, dfdt.u2);
    }

    // Conservative flux differences for dh/dt; velocity neighbours of
    // h-point p are q = p-1 and q = p.
    for (int p = 0; p < nh; ++p)
        dfdt.h[p] = -(flux[p] - flux[wrap(p - 1, nu)]) / (2.0 * d);
}

double mass(const FlowField& f) {
    double total = 0.0;
    for (const double h : f.h) total += h;
    return total * 2.0 * f.grid.spacing();
}

}  // namespace filmsim
