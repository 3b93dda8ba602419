#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "filmsim/full_domain.hpp"
#include "filmsim/model.hpp"

namespace filmsim {

/// Geometry of the patch scheme.  Patches sit at X_j = j*D on a periodic
/// macroscale domain of length m*D.  Odd patches carry the depth at even
/// micro-indices (centre included: H_j) and velocities at odd micro-indices
/// with the edges +-n' being velocity points; even patches are staggered
/// the other way round (centre velocity: U_j, edges are depth points).
struct PatchLayout {
    int m = 10;          ///< patch count, even, >= 4
    double D = 0.0;      ///< inter-patch spacing
    double r = 1.0 / 6;  ///< patch half-width over D, in (0, 1/2)
    int n = 9;           ///< interior micro points per patch, n = 1 (mod 4)
    int n_half = 5;      ///< n' = (n+1)/2, always odd
    double d = 0.0;      ///< micro spacing 2 r D/(n+1)

    double length() const { return m * D; }
    bool odd_patch(int j) const { return ((j % m) + m) % m % 2 == 1; }
    /// Coordinate of micro point i (|i| <= n') on patch j.
    double x(int j, int i) const { return j * D + i * d; }

    /// Evolving unknowns on patch j: odd patches n' depths + 2(n'-1)
    /// velocities, even patches (n'-1) depths + 2n' velocities.
    int patch_dofs(int j) const;
    int patch_offset(int j) const;
    int dof_count() const;
};

/// Field selector for the flat degree-of-freedom map.
enum class PatchField { H, U1, U2 };

/// (patch, micro-index, field) address of one evolving unknown.
struct DofKey {
    int patch;
    int micro_index;
    PatchField field;
};

/// Validated layout constructor; throws std::invalid_argument with an
/// explanation for any parity or range violation.
PatchLayout build_layout(int m, double D, double r, int n);

/// Flat offset of an evolving unknown; throws std::invalid_argument if the
/// key does not address a degree of freedom of the layout.
int dof_index(const PatchLayout& layout, const DofKey& key);

/// Inverse of dof_index.
DofKey dof_key(const PatchLayout& layout, int flat_index);

/// How macroscale samples are interpolated to patch edges.
/// Lagrange: exact polynomial interpolation through the samples at their
/// true positions.  UnitOffset: fixed coefficients that treat the four
/// samples as sitting at offsets -2, -1, +1, +2 regardless of their true
/// spacing (the historical coupling formula; not exact on linears for the
/// staggered macro grid).
enum class InterpolationMode { Lagrange, UnitOffset };

/// Depth supplied to the edge mass flux on odd patches: extrapolated from
/// the patch's two outermost interior depth points (patch-local, the
/// default, matching the edge-drag treatment), or interpolated from the
/// same-parity macroscale depth samples.
enum class EdgeFluxDepth { Extrapolate, Interpolate };

struct CouplingOptions {
    InterpolationMode interpolation = InterpolationMode::Lagrange;
    int degree = 3;      ///< 1 or 3 (Lagrange mode)
    bool edge_lift_h2 = false;
    EdgeFluxDepth edge_flux_depth = EdgeFluxDepth::Extrapolate;
    RegularisationForm form = RegularisationForm::RhsFolded;
};

/// Interpolates one value from four macroscale samples at strictly
/// ascending positions; x_eval must lie between the middle two samples.
/// Throws std::invalid_argument on extrapolation requests or bad degree.
double interpolate_macro(std::span<const double, 4> positions,
                         std::span<const double, 4> values, double x_eval,
                         InterpolationMode mode = InterpolationMode::Lagrange, int degree = 3);

/// Flat state vector of all patch interiors plus its layout.
struct CoupledState {
    PatchLayout layout;
    std::vector<double> values;

    static CoupledState uniform(const PatchLayout& layout, double h0, double u1_0, double u2_0);
};

/// Time derivative of the coupled multi-patch system.  Edge values are
/// recomputed from the macroscale coupling on every call.  Throws
/// std::domain_error if any depth DOF is nonpositive and
/// std::invalid_argument on layout/state size mismatch.
void gaptooth_rhs(std::span<const double> y, const PatchLayout& layout, const ModelParams& m,
                  const CouplingOptions& coupling, std::span<double> dydt);

/// Macroscale restriction: depth at odd-patch centres and mean velocity at
/// even-patch centres, in ascending patch order.
struct MacroValues {
    std::vector<double> H;  ///< one per odd patch
    std::vector<double> U;  ///< one per even patch
};
MacroValues restrict_state(std::span<const double> y, const PatchLayout& layout);

/// Depth at the centre of any patch: the centre DOF on odd patches, the
/// mean of the two innermost depth points on even patches.
double centre_depth(std::span<const double> y, const PatchLayout& layout, int j);

/// Classification bands for patch-scheme eigenvalues.
struct SpectrumClassification {
    double macro_abs_re = 0.2;   ///< |Re| below this: macroscale mode
    double fast_re = -1.0;       ///< Re below this: fast internal mode
    double wave_abs_im = 2.0;    ///< |Im| above this (fast): microscale wave
};

enum class ModeClass { Macroscale, ShearDecay, MicroWave, Other };

struct Spectrum {
    std::vector<std::complex<double>> eigenvalues;  ///< sorted by descending Re
    std::vector<ModeClass> classes;
};

const char* to_string(ModeClass c);

/// Dense Jacobian spectrum of gaptooth_rhs at a base state, via central
/// finite differences (step 1e-6 scaled by max(1, |value|)) and a dense
/// nonsymmetric eigensolve.  Throws std::runtime_error naming the DOF if a
/// Jacobian entry is not finite.
Spectrum jacobian_spectrum(std::span<const double> base, const PatchLayout& layout,
                           const ModelParams& m, const CouplingOptions& coupling,
                           const SpectrumClassification& bands = {});

}  // namespace filmsim
