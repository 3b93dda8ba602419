#include "filmsim/gaptooth.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "filmsim/parallel.hpp"
#include "filmsim/slow_manifold.hpp"
#include "filmsim/tridiagonal.hpp"

namespace filmsim {

namespace {

int wrap(int j, int m) { return ((j % m) + m) % m; }

}  // namespace

int PatchLayout::patch_dofs(int j) const {
    return odd_patch(j) ? 3 * n_half - 2 : 3 * n_half - 1;
}

int PatchLayout::patch_offset(int j) const {
    const int pair = (3 * n_half - 1) + (3 * n_half - 2);  // even + odd patch
    return (j / 2) * pair + (j % 2) * (3 * n_half - 1);
}

int PatchLayout::dof_count() const { return patch_offset(m - 1) + patch_dofs(m - 1); }

PatchLayout build_layout(int m, double D, double r, int n) {
    if (m < 4 || m % 2 != 0)
        throw std::invalid_argument(
            "filmsim: patch count m must be even and >= 4 so the staggered macro grid closes "
            "periodically");
    if (!(D > 0.0)) throw std::invalid_argument("filmsim: patch spacing D must be > 0");
    if (!(r > 0.0 && r < 0.5))
        throw std::invalid_argument(
            "filmsim: patch half-width ratio r must lie in (0, 1/2) so patches do not touch");
    if (n < 5 || n % 4 != 1)
        throw std::invalid_argument(
            "filmsim: micro point count n must satisfy n = 1 (mod 4), n >= 5, so the edge points "
            "carry the staggered parity");
    PatchLayout layout;
    layout.m = m;
    layout.D = D;
    layout.r = r;
    layout.n = n;
    layout.n_half = (n + 1) / 2;
    layout.d = 2.0 * r * D / (n + 1);
    return layout;
}

int dof_index(const PatchLayout& layout, const DofKey& key) {
    const int np = layout.n_half;
    if (key.patch < 0 || key.patch >= layout.m)
        throw std::invalid_argument("filmsim: patch index out of range");
    const bool odd = layout.odd_patch(key.patch);
    const int i = key.micro_index;
    const int base = layout.patch_offset(key.patch);
    const auto fail = [] {
        throw std::invalid_argument("filmsim: (patch, micro, field) is not a degree of freedom");
        return 0;
    };
    if (key.field == PatchField::H) {
        if (odd) {
            if (std::abs(i) > np - 1 || ((i % 2) + 2) % 2 != 0) return fail();
            return base + (i + np - 1) / 2;
        }
        if (std::abs(i) > np - 2 || ((i % 2) + 2) % 2 != 1) return fail();
        return base + (i + np - 2) / 2;
    }
    const int field_offset = key.field == PatchField::U1 ? 0 : (odd ? np - 1 : np);
    if (odd) {
        if (std::abs(i) > np - 2 || ((i % 2) + 2) % 2 != 1) return fail();
        return base + np + field_offset + (i + np - 2) / 2;
    }
    if (std::abs(i) > np - 1 || ((i % 2) + 2) % 2 != 0) return fail();
    return base + (np - 1) + field_offset + (i + np - 1) / 2;
}

DofKey dof_key(const PatchLayout& layout, int flat_index) {
    if (flat_index < 0 || flat_index >= layout.dof_count())
        throw std::invalid_argument("filmsim: flat DOF index out of range");
    int j = 0;
    while (layout.patch_offset(j) + layout.patch_dofs(j) <= flat_index) ++j;
    int rest = flat_index - layout.patch_offset(j);
    const int np = layout.n_half;
    const bool odd = layout.odd_patch(j);
    const int n_h = odd ? np : np - 1;
    const int n_u = odd ? np - 1 : np;
    if (rest < n_h) return {j, odd ? 2 * rest - (np - 1) : 2 * rest - (np - 2), PatchField::H};
    rest -= n_h;
    const PatchField field = rest < n_u ? PatchField::U1 : PatchField::U2;
    if (rest >= n_u) rest -= n_u;
    return {j, odd ? 2 * rest - (np - 2) : 2 * rest - (np - 1), field};
}

double interpolate_macro(std::span<const double, 4> positions,
                         std::span<const double, 4> values, double x_eval,
                         InterpolationMode mode, int degree) {
    for (int i = 0; i < 3; ++i)
        if (!(positions[i] < positions[i + 1]))
            throw std::invalid_argument("filmsim: sample positions must be strictly ascending");
    if (!(x_eval >= positions[1] && x_eval <= positions[2]))
        throw std::invalid_argument(
            "filmsim: evaluation point outside the middle sample interval (extrapolation)");
    if (mode == InterpolationMode::UnitOffset) {
        const double mid = 0.5 * (positions[1] + positions[2]);
        const double unit = 0.5 * (positions[2] - positions[1]);
        const double s = (x_eval - mid) / unit;
        return 0.5 * (values[2] + values[1]) + 0.5 * s * (values[2] - values[1]) +
               (1.0 / 16.0) * (-1.0 + s * s) *
                   (values[3] - values[2] - values[1] + values[0]) +
               (1.0 / 48.0) * (-s + s * s * s) *
                   (values[3] - 3.0 * values[2] + 3.0 * values[1] - values[0]);
    }
    if (degree == 1) {
        const double w = (x_eval - positions[1]) / (positions[2] - positions[1]);
        return (1.0 - w) * values[1] + w * values[2];
    }
    if (degree != 3) throw std::invalid_argument("filmsim: interpolation degree must be 1 or 3");
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
        double basis = 1.0;
        for (int k = 0; k < 4; ++k)
            if (k != i) basis *= (x_eval - positions[k]) / (positions[i] - positions[k]);
        acc += values[i] * basis;
    }
    return acc;
}

CoupledState CoupledState::uniform(const PatchLayout& layout, double h0, double u1_0,
                                   double u2_0) {
    CoupledState s;
    s.layout = layout;
    s.values.assign(layout.dof_count(), 0.0);
    const int np = layout.n_half;
    for (int j = 0; j < layout.m; ++j) {
        const int base = layout.patch_offset(j);
        const int n_h = layout.odd_patch(j) ? np : np - 1;
        const int n_u = layout.odd_patch(j) ? np - 1 : np;
        for (int q = 0; q < n_h; ++q) s.values[base + q] = h0;
        for (int q = 0; q < n_u; ++q) {
            s.values[base + n_h + q] = u1_0;
            s.values[base + n_h + n_u + q] = u2_0;
        }
    }
    return s;
}

namespace {

// Gathered per-patch view of one patch's unknowns plus coupling closures.
struct PatchView {
    const PatchLayout& layout;
    int j;
    std::span<const double> y;

    int np() const { return layout.n_half; }
    bool odd() const { return layout.odd_patch(j); }
    int base() const { return layout.patch_offset(j); }

    // Depth DOF at micro index i (parity as the patch demands).
    double h_dof(int i) const {
        const int np_ = np();
        return odd() ? y[base() + (i + np_ - 1) / 2] : y[base() + (i + np_ - 2) / 2];
    }
    double u_dof(PatchField f, int i) const {
        const int np_ = np();
        const int n_h = odd() ? np_ : np_ - 1;
        const int n_u = odd() ? np_ - 1 : np_;
        const int fo = f == PatchField::U1 ? 0 : n_u;
        const int q = odd() ? (i + np_ - 2) / 2 : (i + np_ - 1) / 2;
        return y[base() + n_h + fo + q];
    }
};

struct MacroArrays {
    std::vector<double> H;  // per patch index; meaningful on the H-carrying parity
    std::vector<double> U;
};

MacroArrays gather_macro(std::span<const double> y, const PatchLayout& layout) {
    MacroArrays mac;
    mac.H.assign(layout.m, 0.0);
    mac.U.assign(layout.m, 0.0);
    for (int j = 0; j < layout.m; ++j) {
        PatchView view{layout, j, y};
        if (layout.odd_patch(j))
            mac.H[j] = view.h_dof(0);
        else
            mac.U[j] = 0.5 * (view.u_dof(PatchField::U1, 0) + view.u_dof(PatchField::U2, 0));
    }
    return mac;
}

// Same-parity macroscale interpolation of field `vals` (carried by patches
// of the parity of j itself) to X_j + offset.
double same_parity_interp(const std::vector<double>& vals, const PatchLayout& layout, int j,
                          double offset, const CouplingOptions& opt) {
    const double D = layout.D;
    const int m = layout.m;
    const std::array<int, 4> neigh = offset < 0.0 ? std::array<int, 4>{-4, -2, 0, 2}
                                                  : std::array<int, 4>{-2, 0, 2, 4};
    std::array<double, 4> pos{}, val{};
    for (int q = 0; q < 4; ++q) {
        pos[q] = neigh[q] * D;
        val[q] = vals[wrap(j + neigh[q], m)];
    }
    return interpolate_macro(pos, val, offset, opt.interpolation, opt.degree);
}

// Other-parity interpolation from the four nearest carriers j+-1, j+-3.
double cross_parity_interp(const std::vector<double>& vals, const PatchLayout& layout, int j,
                           double offset, const CouplingOptions& opt) {
    const double D = layout.D;
    const int m = layout.m;
    const std::array<double, 4> pos = {-3.0 * D, -D, D, 3.0 * D};
    const std::array<double, 4> val = {vals[wrap(j - 3, m)], vals[wrap(j - 1, m)],
                                       vals[wrap(j + 1, m)], vals[wrap(j + 3, m)]};
    return interpolate_macro(pos, val, offset, opt.interpolation, opt.degree);
}

}  // namespace

void gaptooth_rhs(std::span<const double> y, const PatchLayout& layout, const ModelParams& m,
                  const CouplingOptions& coupling, std::span<double> dydt) {
    if (static_cast<int>(y.size()) != layout.dof_count() || dydt.size() != y.size())
        throw std::invalid_argument("filmsim: state size does not match the patch layout");
    if (coupling.degree != 1 && coupling.degree != 3)
        throw std::invalid_argument("filmsim: coupling degree must be 1 or 3");
    const int np = layout.n_half;
    const double d = layout.d;
    const double rD = layout.r * layout.D;

    const MacroArrays mac = gather_macro(y, layout);

    ModelParams point_params = m;
    if (coupling.form == RegularisationForm::OperatorBare) point_params.c_reg = 0.0;

    std::vector<double> hv(2 * np + 1), u1v(2 * np + 1), u2v(2 * np + 1);
    std::vector<double> rate1(np), rate2(np), lo(np), di(np), up(np);

    for (int j = 0; j < layout.m; ++j) {
        PatchView view{layout, j, y};
        const int base = layout.patch_offset(j);
        const bool odd = layout.odd_patch(j);
        const auto at = [&](std::vector<double>& a, int i) -> double& { return a[i + np]; };

        EdgeLift lift_left{}, lift_right{};
        double h_flux_left = 0.0, h_flux_right = 0.0;

        if (odd) {
            for (int i = -(np - 1); i <= np - 1; i += 2) {
                at(hv, i) = view.h_dof(i);
                if (!(at(hv, i) > 0.0))
                    throw std::domain_error("filmsim: depth must stay positive (patch " +
                                            std::to_string(j) + ")");
            }
            for (int i = -(np - 2); i <= np - 2; i += 2) {
                at(u1v, i) = view.u_dof(PatchField::U1, i);
                at(u2v, i) = view.u_dof(PatchField::U2, i);
            }
            // Edge velocities from the macroscale mean-velocity field,
            // lifted to the two layers on the slow manifold.
            const double u_left = cross_parity_interp(mac.U, layout, j, -rD, coupling);
            const double u_right = cross_parity_interp(mac.U, layout, j, rD, coupling);
            // Depth for the edge drag: patch-local linear extrapolation.
            const double h_drag_left = at(hv, -(np - 1)) +
                                       0.5 * (at(hv, -(np - 1)) - at(hv, -(np - 3)));
            const double h_drag_right =
                at(hv, np - 1) + 0.5 * (at(hv, np - 1) - at(hv, np - 3));
            if (!(h_drag_left > 0.0) || !(h_drag_right > 0.0))
                throw std::domain_error("filmsim: extrapolated edge depth must stay positive");
            lift_left = edge_lift(u_left, h_drag_left, m, coupling.edge_lift_h2);
            lift_right = edge_lift(u_right, h_drag_right, m, coupling.edge_lift_h2);
            at(u1v, -np) = lift_left.u1;
            at(u2v, -np) = lift_left.u2;
            at(u1v, np) = lift_right.u1;
            at(u2v, np) = lift_right.u2;
            if (coupling.edge_flux_depth == EdgeFluxDepth::Interpolate) {
                h_flux_left = same_parity_interp(mac.H, layout, j, -rD, coupling);
                h_flux_right = same_parity_interp(mac.H, layout, j, rD, coupling);
            } else {
                h_flux_left = h_drag_left;
                h_flux_right = h_drag_right;
            }
        } else {
            for (int i = -(np - 2); i <= np - 2; i += 2) {
                at(hv, i) = view.h_dof(i);
                if (!(at(hv, i) > 0.0))
                    throw std::domain_error("filmsim: depth must stay positive (patch " +
                                            std::to_string(j) + ")");
            }
            for (int i = -(np - 1); i <= np - 1; i += 2) {
                at(u1v, i) = view.u_dof(PatchField::U1, i);
                at(u2v, i) = view.u_dof(PatchField::U2, i);
            }
            // Edge depths from the macroscale depth field.
            at(hv, -np) = cross_parity_interp(mac.H, layout, j, -rD, coupling);
            at(hv, np) = cross_parity_interp(mac.H, layout, j, rD, coupling);
            if (!(at(hv, -np) > 0.0) || !(at(hv, np) > 0.0))
                throw std::domain_error("filmsim: interpolated edge depth must stay positive");
        }

        // Mirror closure past even-patch edges; odd patches never index
        // beyond their edges.
        const auto u_at = [&](const std::vector<double>& a, int i) {
            if (i > np) i = 2 * (np - 1) - (i - 2);  // np + 1 -> np - 1
            if (i < -np) i = -2 * (np - 1) - (i + 2);
            return a[i + np];
        };

        // Mass flux at velocity point v.
        const auto flux = [&](int v) {
            double h_here;
            if (v == -np)
                h_here = h_flux_left;
            else if (v == np)
                h_here = h_flux_right;
            else
                h_here = 0.5 * (hv[v - 1 + np] + hv[v + 1 + np]);
            return h_here * 0.5 * (u_at(u1v, v) + u_at(u2v, v));
        };

        const int u_lo = odd ? -(np - 2) : -(np - 1);
        const int u_hi = odd ? np - 2 : np - 1;
        const int h_lo = odd ? -(np - 1) : -(np - 2);
        const int h_hi = odd ? np - 1 : np - 2;

        // Velocity rates from the pointwise model.
        int n_u = 0;
        for (int v = u_lo; v <= u_hi; v += 2, ++n_u) {
            PointState p{};
            p.h = 0.5 * (at(hv, v - 1) + at(hv, v + 1));
            p.dh = (at(hv, v + 1) - at(hv, v - 1)) / (2.0 * d);
            p.u1 = u_at(u1v, v);
            p.u2 = u_at(u2v, v);
            p.du1 = (u_at(u1v, v + 2) - u_at(u1v, v - 2)) / (4.0 * d);
            p.du2 = (u_at(u2v, v + 2) - u_at(u2v, v - 2)) / (4.0 * d);
            p.d2u1 = (u_at(u1v, v + 2) - 2.0 * p.u1 + u_at(u1v, v - 2)) / (4.0 * d * d);
            p.d2u2 = (u_at(u2v, v + 2) - 2.0 * p.u2 + u_at(u2v, v - 2)) / (4.0 * d * d);
            rate1[n_u] = rhs_u1(p, point_params);
            rate2[n_u] = rhs_u2(p, point_params);
        }

        if (coupling.form != RegularisationForm::RhsFolded && m.c_reg > 0.0) {
            // Banded operator rows over the patch velocity points; edge
            // rates (odd patches) move to the right-hand side, the mirror
            // closes the even-patch corners.
            const double s = 1.0 / (4.0 * d * d);
            int q = 0;
            for (int v = u_lo; v <= u_hi; v += 2, ++q) {
                const double hl2 = at(hv, v - 1) * at(hv, v - 1);
                const double hr2 = at(hv, v + 1) * at(hv, v + 1);
                lo[q] = -m.c_reg * hl2 * s;
                di[q] = 1.0 + m.c_reg * (hl2 + hr2) * s;
                up[q] = -m.c_reg * hr2 * s;
            }
            const int count = n_u;
            if (odd) {
                rate1[0] -= lo[0] * lift_left.du1_dt;
                rate2[0] -= lo[0] * lift_left.du2_dt;
                rate1[count - 1] -= up[count - 1] * lift_right.du1_dt;
                rate2[count - 1] -= up[count - 1] * lift_right.du2_dt;
            } else {
                di[0] += lo[0];
                di[count - 1] += up[count - 1];
            }
            lo[0] = up[count - 1] = 0.0;
            auto span_of = [count](std::vector<double>& a) {
                return std::span<const double>(a.data(), count);
            };
            const auto sol1 = solve_tridiagonal(span_of(lo), span_of(di), span_of(up),
                                                std::span<const double>(rate1.data(), count));
            const auto sol2 = solve_tridiagonal(span_of(lo), span_of(di), span_of(up),
                                                std::span<const double>(rate2.data(), count));
            std::copy(sol1.begin(), sol1.end(), rate1.begin());
            std::copy(sol2.begin(), sol2.end(), rate2.begin());
        }

        const int n_h = odd ? np : np - 1;
        int q = 0;
        for (int i = h_lo; i <= h_hi; i += 2, ++q)
            dydt[base + q] = -(flux(i + 1) - flux(i - 1)) / (2.0 * d);
        for (int q2 = 0; q2 < n_u; ++q2) {
            dydt[base + n_h + q2] = rate1[q2];
            dydt[base + n_h + n_u + q2] = rate2[q2];
        }
    }
}

MacroValues restrict_state(std::span<const double> y, const PatchLayout& layout) {
    if (static_cast<int>(y.size()) != layout.dof_count())
        throw std::invalid_argument("filmsim: state size does not match the patch layout");
    MacroValues out;
    for (int j = 0; j < layout.m; ++j) {
        PatchView view{layout, j, y};
        if (layout.odd_patch(j))
            out.H.push_back(view.h_dof(0));
        else
            out.U.push_back(0.5 *
                            (view.u_dof(PatchField::U1, 0) + view.u_dof(PatchField::U2, 0)));
    }
    return out;
}

double centre_depth(std::span<const double> y, const PatchLayout& layout, int j) {
    PatchView view{layout, wrap(j, layout.m), y};
    if (layout.odd_patch(j)) return view.h_dof(0);
    return 0.5 * (view.h_dof(-1) + view.h_dof(1));
}

const char* to_string(ModeClass c) {
    switch (c) {
        case ModeClass::Macroscale: return "macroscale";
        case ModeClass::ShearDecay: return "shear";
        case ModeClass::MicroWave: return "microwave";
        default: return "other";
    }
}

Spectrum jacobian_spectrum(std::span<const double> base, const PatchLayout& layout,
                           const ModelParams& m, const CouplingOptions& coupling,
                           const SpectrumClassification& bands) {
    const int n = layout.dof_count();
    if (static_cast<int>(base.size()) != n)
        throw std::invalid_argument("filmsim: state size does not match the patch layout");

    Eigen::MatrixXd jac(n, n);
    parallel_for(n, [&](int col) {
        std::vector<double> yp(base.begin(), base.end());
        std::vector<double> fp(n), fm(n);
        const double step = 1e-6 * std::max(1.0, std::abs(base[col]));
        yp[col] = base[col] + step;
        gaptooth_rhs(yp, layout, m, coupling, fp);
        yp[col] = base[col] - step;
        gaptooth_rhs(yp, layout, m, coupling, fm);
        for (int row = 0; row < n; ++row) jac(row, col) = (fp[row] - fm[row]) / (2.0 * step);
    });

    for (int col = 0; col < n; ++col)
        for (int row = 0; row < n; ++row)
            if (!std::isfinite(jac(row, col))) {
                const DofKey key = dof_key(layout, col);
                throw std::runtime_error(
                    "filmsim: non-finite Jacobian entry for DOF (patch " +
                    std::to_string(key.patch) + ", micro " + std::to_string(key.micro_index) +
                    ", field " +
                    (key.field == PatchField::H ? "h"
                                                : key.field == PatchField::U1 ? "u1" : "u2") +
                    ")");
            }

    Eigen::EigenSolver<Eigen::MatrixXd> solver(jac, false);
    Spectrum spectrum;
    spectrum.eigenvalues.resize(n);
    for (int i = 0; i < n; ++i) spectrum.eigenvalues[i] = solver.eigenvalues()(i);
    std::sort(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end(),
              [](const std::complex<double>& a, const std::complex<double>& b) {
                  if (a.real() != b.real()) return a.real() > b.real();
                  return a.imag() > b.imag();
              });
    spectrum.classes.reserve(n);
    for (const auto& lambda : spectrum.eigenvalues) {
        ModeClass c = ModeClass::Other;
        if (std::abs(lambda.real()) < bands.macro_abs_re)
            c = ModeClass::Macroscale;
        else if (lambda.real() < bands.fast_re)
            c = std::abs(lambda.imag()) > bands.wave_abs_im ? ModeClass::MicroWave
                                                            : ModeClass::ShearDecay;
        spectrum.classes.push_back(c);
    }
    return spectrum;
}

}  // namespace filmsim
