#include "filmsim/model.hpp"

#include <cmath>
#include <stdexcept>

namespace filmsim {

namespace {

void require_positive_depth(double h) {
    if (!(h > 0.0)) throw std::domain_error("filmsim: depth must be positive");
}

}  // namespace

void ModelParams::validate() const {
    if (!(re > 0.0)) throw std::invalid_argument("filmsim: re must be > 0");
    if (!(c_reg >= 0.0)) throw std::invalid_argument("filmsim: c_reg must be >= 0");
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw std::invalid_argument("filmsim: gamma must lie in [0, 1]");
    if (!std::isfinite(tan_theta))
        throw std::invalid_argument("filmsim: tan_theta must be finite");
}

double rhs_h(const PointState& p) {
    return -0.5 * ((p.dh * p.u1 + p.h * p.du1) + (p.dh * p.u2 + p.h * p.du2));
}

double rhs_u1(const PointState& p, const ModelParams& m) {
    require_positive_depth(p.h);
    using namespace coeffs;
    const double h2 = p.h * p.h;
    const double grav = gravity_lower * (m.tan_theta - p.dh);
    const double drag = (drag11 * p.u1 + drag12 * p.u2) / (m.re * h2);
    const double adv = advection_lower[0] * p.u1 * p.du1 + advection_lower[1] * p.u2 * p.du2 +
                       advection_lower[2] * p.u2 * p.du1 + advection_lower[3] * p.u1 * p.du2;
    const double shear =
        (p.u1 - p.u2) / p.h * (shear_lower[0] * p.u1 + shear_lower[1] * p.u2) * p.dh;
    // Regularised dispersion: the operator correction folds into the
    // coefficients as (bare - C*drag).
    const double disp = ((disp11 - m.c_reg * drag11) * p.d2u1 +
                         (disp12 - m.c_reg * drag12) * p.d2u2) /
                        m.re;
    return grav + drag + adv + shear + disp;
}

double rhs_u2(const PointState& p, const ModelParams& m) {
    require_positive_depth(p.h);
    using namespace coeffs;
    const double h2 = p.h * p.h;
    const double grav = gravity_upper * (m.tan_theta - p.dh);
    const double drag = (drag21 * p.u1 + drag22 * p.u2) / (m.re * h2);
    const double adv = advection_upper[0] * p.u1 * p.du1 + advection_upper[1] * p.u2 * p.du2 +
                       advection_upper[2] * p.u2 * p.du1 + advection_upper[3] * p.u1 * p.du2;
    const double shear =
        (p.u1 - p.u2) / p.h * (shear_upper[0] * p.u1 + shear_upper[1] * p.u2) * p.dh;
    const double disp = ((disp21 - m.c_reg * drag21) * p.d2u1 +
                         (disp22 - m.c_reg * drag22) * p.d2u2) /
                        m.re;
    return grav + drag + adv + shear + disp;
}

FieldSample reconstruct_fields(const PointState& p, const ModelParams& m, double Z) {
    require_positive_depth(p.h);
    if (!(Z >= 0.0 && Z <= 1.0))
        throw std::domain_error("filmsim: scaled depth Z must lie in [0, 1]");

    const double g = m.gamma;
    const double re = m.re;
    const double h = p.h, dh = p.dh, d2h = p.d2h;
    const double u1 = p.u1, u2 = p.u2, du1 = p.du1, du2 = p.du2;
    const double Z2 = Z * Z, Z3 = Z2 * Z, Z4 = Z3 * Z, Z5 = Z4 * Z;

    FieldSample out{};

    out.p1 = (1.0 - Z) * h +
             h * h * d2h * ((-0.422 + 0.104 * Z - 0.5 * Z2) + g * (-0.0148 - 0.0107 * Z)) +
             h * m.tan_theta * dh * ((0.0469 - 0.104 * Z) + g * (0.0375 + 0.0107 * Z)) +
             (2.0 / re) * ((du1 - du2 - 2.0 * du1 * Z) +
                           (dh / h) * (u1 + u2 - 2.0 * u1 * Z)) +
             (g / re) * ((4.875 * du1 - 1.125 * du2 - 1.5 * du1 * Z + 0.5 * du2 * Z) +
                         (dh / h) * (-7.625 * u1 + 2.375 * u2 + 1.5 * u1 * Z - 0.5 * u2 * Z));

    out.p2 = (1.0 - Z) * h +
             h * h * d2h * ((-0.417 + 0.115 * Z - 0.5 * Z2) + g * (-0.0178 - 0.0049 * Z)) +
             h * m.tan_theta * dh * ((0.0521 - 0.115 * Z) + g * (0.0404 + 0.0049 * Z)) +
             (4.0 / re) * ((-du1 - du2 + 2.0 * du1 * Z) +
                           (dh / h) * (2.0 * u1 - u2 - 2.0 * u1 * Z + u2 * Z)) +
             (g / re) * ((11.0 * du1 - 3.0 * du2 - 13.75 * du1 * Z + 4.25 * du2 * Z) +
                         (dh / h) * (-13.75 * u1 + 4.25 * u2 + 13.75 * u1 * Z - 4.25 * u2 * Z));

    // The gravity-driven profile enters through (tan_theta - dh) with one
    // shared polynomial per layer.
    const double grav1 = (0.104 - 0.0107 * g) * Z - 0.5 * Z2 + (0.5 + 0.123 * g) * Z3 -
                         0.225 * g * Z5;
    out.u1_of_z = (4.0 + 1.5 * g) * u1 * Z - 0.5 * g * u2 * Z + (4.0 * u2 - 12.0 * u1) * g * Z3 +
                  re * h * h * (m.tan_theta - dh) * grav1;

    const double grav2 = (0.089 - 0.10 * g) + (-0.45 + 0.68 * g) * Z + (0.63 - 1.8 * g) * Z2 +
                         (-0.25 + 2.5 * g) * Z3 - 1.8 * g * Z4 + 0.49 * g * Z5;
    out.u2_of_z = (6.0 - 11.9 * g) * u1 + (-2.0 + 4.13 * g) * u2 + (4.0 - 17.8 * g) * u2 * Z +
                  (-8.0 + 48.3 * g) * u1 * Z + (27.0 * u2 - 69.0 * u1) * g * Z2 +
                  (34.0 * u1 - 14.0 * u2) * g * Z3 + re * h * h * (m.tan_theta - dh) * grav2;

    return out;
}

}  // namespace filmsim
