#pragma once

#include "filmsim/model.hpp"

namespace filmsim {

/// One-layer macroscale state at a point: depth, mean velocity and their
/// lateral derivatives.
struct MacroPoint {
    double h = 1.0;
    double dh = 0.0;
    double d2h = 0.0;
    double u = 0.0;
    double du = 0.0;
    double d2u = 0.0;
};

struct LayerVelocities {
    double u1;
    double u2;
};

struct LayerRates {
    double du1_dt;
    double du2_dt;
};

/// Values and rates prescribed at a patch edge by the derivative-free
/// slow-manifold lifting.
struct EdgeLift {
    double u1;
    double u2;
    double du1_dt;
    double du2_dt;
};

struct MacroRates {
    double dh_dt;
    double du_dt;
};

/// Lifts the one-layer velocity to the two layer mean velocities on the
/// slow manifold, derivative terms included.  The construction keeps
/// (u1 + u2)/2 equal to q.u to rounding.  Throws std::domain_error for h <= 0.
LayerVelocities lift_velocities(const MacroPoint& q, const ModelParams& m);

/// Rates of change of the two layer velocities on the slow manifold,
/// derivative terms included.  Throws std::domain_error for h <= 0.
LayerRates lift_rates(const MacroPoint& q, const ModelParams& m);

/// Derivative-free edge lifting used by patch coupling: values and rates
/// from the edge mean velocity and depth alone.  `include_h2` restores the
/// h^2 factor on the slope term that the full lifting carries; the default
/// is the plain form.  Throws std::domain_error for h_edge <= 0.
EdgeLift edge_lift(double u_edge, double h_edge, const ModelParams& m, bool include_h2 = false);

/// The reduced one-layer model: mass conservation and the mean momentum
/// equation.  Throws std::domain_error for h <= 0.
MacroRates one_layer_rhs(const MacroPoint& q, const ModelParams& m);

}  // namespace filmsim
