#pragma once

#include "filmsim/constants.hpp"

namespace filmsim {

/// Physical and numerical constants governing every right-hand-side
/// evaluation of the two-layer model.
struct ModelParams {
    double re = 15.0;         ///< Reynolds number, > 0
    double tan_theta = 0.0;   ///< plate slope
    double c_reg = 0.5;       ///< regularisation coefficient C, >= 0
    double gamma = 1.0;       ///< homotopy parameter in [0, 1] (vertical profiles only)

    /// Throws std::invalid_argument if any parameter is out of range.
    void validate() const;
};

/// Local flow state at one lateral position: depth, layer mean velocities
/// and their first/second lateral derivatives.
struct PointState {
    double h = 1.0;
    double dh = 0.0;
    double d2h = 0.0;
    double u1 = 0.0;
    double u2 = 0.0;
    double du1 = 0.0;
    double du2 = 0.0;
    double d2u1 = 0.0;
    double d2u2 = 0.0;
};

/// Rate of change of the depth, -0.5 d/dx (h u1 + h u2), expanded in the
/// supplied derivatives.  Non-finite input propagates.
double rhs_h(const PointState& p);

/// Rate of change of the lower layer mean velocity: gravity, drag,
/// advection, slope-shear and the C-regularised dispersion.
/// Throws std::domain_error for h <= 0.
double rhs_u1(const PointState& p, const ModelParams& m);

/// Rate of change of the upper layer mean velocity.  See rhs_u1.
double rhs_u2(const PointState& p, const ModelParams& m);

/// Vertical structure of pressure and velocity at scaled depth Z = z/h.
struct FieldSample {
    double p1;        ///< lower-layer pressure (valid Z in [0, 1/2])
    double p2;        ///< upper-layer pressure (valid Z in [1/2, 1])
    double u1_of_z;   ///< lower-layer velocity profile
    double u2_of_z;   ///< upper-layer velocity profile
};

/// Evaluates the vertical profile polynomials at Z in [0, 1] with the
/// homotopy parameter m.gamma.  Both layers are evaluated for any Z; the
/// lower-layer expressions are meaningful for Z <= 1/2 and the upper for
/// Z >= 1/2.  Throws std::domain_error for Z outside [0, 1] or h <= 0.
FieldSample reconstruct_fields(const PointState& p, const ModelParams& m, double Z);

}  // namespace filmsim
