#pragma once

#include <span>
#include <vector>

#include "filmsim/model.hpp"

namespace filmsim {

/// Where the regularising operator acts in the semidiscrete equations.
/// `RhsFolded` keeps the operator's effect in the regularised
/// coefficients of the pointwise right-hand side (the form whose linear
/// analysis matches the characteristic cubic, and the default).
/// `OperatorBare` solves L du/dt = rhs with the unregularised coefficients;
/// `OperatorFolded` applies both.  The latter two are kept for study: see
/// the formulation tests.
enum class RegularisationForm { RhsFolded, OperatorBare, OperatorFolded };

/// Periodic staggered grid: even-index points carry the depth h, odd-index
/// points carry the velocity pair (u1, u2).
struct FullGrid {
    double length = 0.0;
    int n_cells = 0;

    double spacing() const { return length / n_cells; }
    int h_count() const { return n_cells / 2; }
    int u_count() const { return n_cells / 2; }
    double x_h(int p) const { return 2 * p * spacing(); }
    double x_u(int q) const { return (2 * q + 1) * spacing(); }

    /// Validated constructor; n_cells must be even and >= 8, length > 0.
    static FullGrid make(double length, int n_cells);
};

/// Discrete flow state on a FullGrid.
struct FlowField {
    FullGrid grid;
    std::vector<double> h;    ///< depth at h-points, size h_count()
    std::vector<double> u1;   ///< lower velocity at u-points, size u_count()
    std::vector<double> u2;   ///< upper velocity at u-points

    static FlowField uniform(const FullGrid& grid, double h0, double u1_0, double u2_0);
    std::size_t size() const { return h.size() + u1.size() + u2.size(); }
    void to_flat(std::span<double> out) const;
    void from_flat(std::span<const double> in);
};

/// Centred staggered-stencil derivatives at a global point index (periodic).
/// Same-field first/second derivatives span 4d / 4d^2; the other field is
/// averaged from the two neighbours and differenced over 2d.  Cross-field
/// second derivatives are not representable on this stencil and are zero.
PointState stencil_derivatives(const FlowField& f, int point_index);

/// Semidiscrete time derivative of the full-domain model.  The depth
/// equation is in conservative flux form; velocity rates come from the
/// pointwise model, with the cyclic tridiagonal operator solve applied for
/// the operator-on-the-left forms.  Throws std::domain_error if any h <= 0.
void full_rhs(const FlowField& f, const ModelParams& m, FlowField& dfdt,
              RegularisationForm form = RegularisationForm::RhsFolded);

/// Total fluid volume: sum of h times the h-point spacing (2d).
double mass(const FlowField& f);

}  // namespace filmsim
