#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "filmsim/gaptooth.hpp"
#include "filmsim/slow_manifold.hpp"
#include "filmsim/stability.hpp"
#include "support/oracles.hpp"

using namespace filmsim;
using std::numbers::pi;

namespace {

PatchLayout reference_layout() { return build_layout(10, pi, 1.0 / 6.0, 9); }

}  // namespace

TEST_SUITE("gaptooth") {

TEST_CASE("layout construction") {
    const PatchLayout lay = reference_layout();
    CHECK(lay.n_half == 5);
    CHECK(lay.d == doctest::Approx(pi / 30.0).epsilon(1e-14));
    CHECK(lay.length() == doctest::Approx(10.0 * pi));

    const PatchLayout small = build_layout(4, 1.0, 0.25, 5);
    CHECK(small.d == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
    CHECK(small.n_half == 3);

    CHECK_THROWS_AS(build_layout(10, pi, 1.0 / 6.0, 7), std::invalid_argument);
    CHECK_THROWS_AS(build_layout(5, pi, 1.0 / 6.0, 9), std::invalid_argument);
    CHECK_THROWS_AS(build_layout(10, pi, 0.5, 9), std::invalid_argument);
    CHECK_THROWS_AS(build_layout(10, pi, 0.0, 9), std::invalid_argument);
}

TEST_CASE("degree-of-freedom map is a bijection") {
    for (const auto& lay : {reference_layout(), build_layout(4, 1.0, 0.25, 5)}) {
        CHECK(lay.dof_count() ==
              lay.m / 2 * ((3 * lay.n_half - 1) + (3 * lay.n_half - 2)));
        std::set<int> seen;
        // Constructive enumeration of every legal key.
        for (int j = 0; j < lay.m; ++j) {
            const bool odd = lay.odd_patch(j);
            const int np = lay.n_half;
            const int h_lo = odd ? -(np - 1) : -(np - 2);
            const int u_lo = odd ? -(np - 2) : -(np - 1);
            for (int i = h_lo; i <= -h_lo; i += 2) {
                const int flat = dof_index(lay, {j, i, PatchField::H});
                CHECK(seen.insert(flat).second);
                const DofKey back = dof_key(lay, flat);
                CHECK(back.patch == j);
                CHECK(back.micro_index == i);
                CHECK(back.field == PatchField::H);
            }
            for (int i = u_lo; i <= -u_lo; i += 2)
                for (const auto f : {PatchField::U1, PatchField::U2}) {
                    const int flat = dof_index(lay, {j, i, f});
                    CHECK(seen.insert(flat).second);
                    const DofKey back = dof_key(lay, flat);
                    CHECK((back.patch == j && back.micro_index == i && back.field == f));
                }
        }
        CHECK(static_cast<int>(seen.size()) == lay.dof_count());
        CHECK(*seen.begin() == 0);
        CHECK(*seen.rbegin() == lay.dof_count() - 1);
        // Illegal parities are rejected.
        CHECK_THROWS_AS(dof_index(lay, {1, 1, PatchField::H}), std::invalid_argument);
        CHECK_THROWS_AS(dof_index(lay, {0, lay.n_half, PatchField::U1}), std::invalid_argument);
    }
}

TEST_CASE("macro interpolation") {
    const std::array<double, 4> pos = {-3.0, -1.0, 1.0, 3.0};
    SUBCASE("constants are reproduced by both modes") {
        const std::array<double, 4> vals = {2.5, 2.5, 2.5, 2.5};
        for (const auto mode : {InterpolationMode::Lagrange, InterpolationMode::UnitOffset}) {
            CHECK(interpolate_macro(pos, vals, 0.3, mode) == doctest::Approx(2.5).epsilon(1e-14));
            CHECK(interpolate_macro(pos, vals, -0.9, mode) == doctest::Approx(2.5).epsilon(1e-14));
        }
    }
    SUBCASE("cubic exactness of the Lagrange mode") {
        const auto cubic = [](double x) { return 0.3 * x * x * x - x * x + 2.0 * x - 5.0; };
        std::array<double, 4> vals{};
        for (int i = 0; i < 4; ++i) vals[i] = cubic(pos[i]);
        for (const double x : {-0.99, -0.2, 0.0, 0.77}) {
            CHECK(interpolate_macro(pos, vals, x) == doctest::Approx(cubic(x)).epsilon(1e-12));
        }
    }
    SUBCASE("degree 1 uses the middle pair") {
        const std::array<double, 4> vals = {9.0, 1.0, 3.0, -7.0};
        CHECK(interpolate_macro(pos, vals, 0.0, InterpolationMode::Lagrange, 1) ==
              doctest::Approx(2.0).epsilon(1e-14));
    }
    SUBCASE("unit-offset coefficients are not exact on linears") {
        // Samples of a unit-slope line at true positions +-1, +-2: the fixed
        // coefficients land r + (r - r^3)/24 away from the sample scale.
        const std::array<double, 4> lin_pos = {-2.0, -1.0, 1.0, 2.0};
        const std::array<double, 4> lin_vals = {-2.0, -1.0, 1.0, 2.0};
        const double r = 1.0 / 6.0;
        const double expected = r + (r - r * r * r) / 24.0;  // = 1/6 + 35/5184
        const double got = interpolate_macro(lin_pos, lin_vals, r, InterpolationMode::UnitOffset);
        CHECK(got == doctest::Approx(expected).epsilon(1e-14));
        CHECK(std::abs(got - r) == doctest::Approx(35.0 / 5184.0).epsilon(1e-12));
    }
    SUBCASE("extrapolation requests are rejected") {
        const std::array<double, 4> vals = {0.0, 1.0, 2.0, 3.0};
        CHECK_THROWS_AS(interpolate_macro(pos, vals, 2.0), std::invalid_argument);
        CHECK_THROWS_AS(interpolate_macro(pos, vals, -1.5), std::invalid_argument);
    }
}

TEST_CASE("uniform states are stationary") {
    // Including the smallest legal patch count (wrapped interpolation
    // stencils) and a wider patch.
    const ModelParams m{15.0, 0.0, 0.5, 1.0};
    for (const auto& lay : {reference_layout(), build_layout(4, 2.0, 0.25, 5),
                            build_layout(6, 1.5, 0.3, 13)}) {
        const CoupledState rest = CoupledState::uniform(lay, 1.0, 0.0, 0.0);
        std::vector<double> dydt(rest.values.size());
        for (const auto form :
             {RegularisationForm::RhsFolded, RegularisationForm::OperatorFolded}) {
            CouplingOptions opt;
            opt.form = form;
            gaptooth_rhs(rest.values, lay, m, opt, dydt);
            for (const double v : dydt) CHECK(std::abs(v) <= 1e-14);
        }
        // Nonuniform depths still yield finite rates everywhere.
        CoupledState bumped = rest;
        oracles::Rng rng(lay.m + lay.n);
        for (int i = 0; i < lay.dof_count(); ++i)
            if (dof_key(lay, i).field == PatchField::H)
                bumped.values[i] = rng.uniform(0.7, 1.3);
        gaptooth_rhs(bumped.values, lay, m, CouplingOptions{}, dydt);
        for (const double v : dydt) CHECK(std::isfinite(v));
    }
}

TEST_CASE("equilibrium shear on a slope has small residual") {
    const PatchLayout lay = reference_layout();
    const ModelParams m{15.0, 0.1, 0.5, 1.0};
    const auto [u1_eq, u2_eq] = equilibrium_velocities(m.re, m.tan_theta);
    const CoupledState eq = CoupledState::uniform(lay, 1.0, u1_eq, u2_eq);
    std::vector<double> dydt(eq.values.size());
    gaptooth_rhs(eq.values, lay, m, CouplingOptions{}, dydt);
    double worst = 0.0;
    for (const double v : dydt) worst = std::max(worst, std::abs(v));
    CHECK(worst <= 1e-2 * std::max(1.0, m.re * m.tan_theta));
}

TEST_CASE("uniform lifted shear follows the one-layer decay rate") {
    const PatchLayout lay = reference_layout();
    const ModelParams m{15.0, 0.0, 0.5, 1.0};
    const double c = 0.8;
    const CoupledState s = CoupledState::uniform(lay, 1.0, 0.587 * c, 1.413 * c);
    std::vector<double> dydt(s.values.size());
    gaptooth_rhs(s.values, lay, m, CouplingOptions{}, dydt);
    const MacroValues macro_rate = restrict_state(dydt, lay);
    for (const double dU : macro_rate.U)
        CHECK(dU == doctest::Approx(-2.504 * c / 15.0).epsilon(0.02));
}

TEST_CASE("restriction reads patch centres") {
    const PatchLayout lay = reference_layout();
    SUBCASE("uniform fields") {
        const CoupledState s = CoupledState::uniform(lay, 1.7, 0.587 * 0.4, 1.413 * 0.4);
        const MacroValues mv = restrict_state(s.values, lay);
        REQUIRE(mv.H.size() == 5);
        REQUIRE(mv.U.size() == 5);
        for (const double H : mv.H) CHECK(H == 1.7);
        for (const double U : mv.U) CHECK(U == doctest::Approx(0.4).epsilon(1e-14));
    }
    SUBCASE("round trip through sampled macro profiles") {
        CoupledState s = CoupledState::uniform(lay, 1.0, 0.0, 0.0);
        const auto h_profile = [&](double x) { return 1.0 + 0.1 * std::cos(2.0 * pi * x / lay.length()); };
        const auto u_profile = [&](double x) { return 0.2 * std::sin(2.0 * pi * x / lay.length()); };
        for (int j = 0; j < lay.m; ++j) {
            const bool odd = lay.odd_patch(j);
            const int np = lay.n_half;
            const int h_lo = odd ? -(np - 1) : -(np - 2);
            const int u_lo = odd ? -(np - 2) : -(np - 1);
            for (int i = h_lo; i <= -h_lo; i += 2)
                s.values[dof_index(lay, {j, i, PatchField::H})] = h_profile(lay.x(j, i));
            for (int i = u_lo; i <= -u_lo; i += 2) {
                const MacroPoint q{1.0, 0, 0, u_profile(lay.x(j, i)), 0, 0};
                const auto lifted = lift_velocities(q, ModelParams{});
                s.values[dof_index(lay, {j, i, PatchField::U1})] = lifted.u1;
                s.values[dof_index(lay, {j, i, PatchField::U2})] = lifted.u2;
            }
        }
        const MacroValues mv = restrict_state(s.values, lay);
        int odd_idx = 0, even_idx = 0;
        for (int j = 0; j < lay.m; ++j) {
            if (lay.odd_patch(j))
                CHECK(mv.H[odd_idx++] == doctest::Approx(h_profile(j * lay.D)).epsilon(1e-14));
            else
                CHECK(mv.U[even_idx++] == doctest::Approx(u_profile(j * lay.D)).epsilon(1e-13));
        }
    }
}

TEST_CASE("rotating the patch array by one parity period rotates the rates") {
    const PatchLayout lay = reference_layout();
    const ModelParams m{15.0, 0.05, 0.5, 1.0};
    oracles::Rng rng(999);
    CoupledState s = CoupledState::uniform(lay, 1.0, 0.0, 0.0);
    for (auto& v : s.values) v += 0.0;  // start from rest, then perturb depths
    for (int j = 0; j < lay.m; ++j) {
        const bool odd = lay.odd_patch(j);
        const int np = lay.n_half;
        const int h_lo = odd ? -(np - 1) : -(np - 2);
        for (int i = h_lo; i <= -h_lo; i += 2)
            s.values[dof_index(lay, {j, i, PatchField::H})] = rng.uniform(0.8, 1.2);
        const int u_lo = odd ? -(np - 2) : -(np - 1);
        for (int i = u_lo; i <= -u_lo; i += 2) {
            s.values[dof_index(lay, {j, i, PatchField::U1})] = rng.uniform(-0.2, 0.2);
            s.values[dof_index(lay, {j, i, PatchField::U2})] = rng.uniform(-0.2, 0.2);
        }
    }
    // Rotate by two patches (one parity period).
    CoupledState rotated = s;
    for (int flat = 0; flat < lay.dof_count(); ++flat) {
        const DofKey key = dof_key(lay, flat);
        const DofKey moved{(key.patch + 2) % lay.m, key.micro_index, key.field};
        rotated.values[dof_index(lay, moved)] = s.values[flat];
    }
    std::vector<double> dydt(s.values.size()), dydt_rot(s.values.size());
    gaptooth_rhs(s.values, lay, m, CouplingOptions{}, dydt);
    gaptooth_rhs(rotated.values, lay, m, CouplingOptions{}, dydt_rot);
    for (int flat = 0; flat < lay.dof_count(); ++flat) {
        const DofKey key = dof_key(lay, flat);
        const DofKey moved{(key.patch + 2) % lay.m, key.micro_index, key.field};
        CHECK(dydt_rot[dof_index(lay, moved)] == doctest::Approx(dydt[flat]).epsilon(1e-12));
    }
}

TEST_CASE("cubic macro profiles pass through the edge coupling exactly") {
    // Build macro samples of a cubic in the patch index and check the
    // Lagrange edge interpolation against the polynomial away from the wrap.
    const PatchLayout lay = reference_layout();
    const auto poly = [](double x) { return 0.02 * x * x * x - 0.1 * x * x + 0.4 * x + 1.0; };
    const double D = lay.D, rD = lay.r * lay.D;
    for (const double off : {-rD, rD}) {
        const double xj = 4.0 * D;  // away from the periodic seam
        const std::array<double, 4> pos = {xj - 3 * D, xj - D, xj + D, xj + 3 * D};
        const std::array<double, 4> vals = {poly(pos[0]), poly(pos[1]), poly(pos[2]),
                                            poly(pos[3])};
        CHECK(interpolate_macro(pos, vals, xj + off) ==
              doctest::Approx(poly(xj + off)).epsilon(1e-12));
    }
}

TEST_CASE("depth positivity violations are state errors") {
    const PatchLayout lay = reference_layout();
    CoupledState s = CoupledState::uniform(lay, 1.0, 0.0, 0.0);
    s.values[dof_index(lay, {1, 0, PatchField::H})] = -0.5;
    std::vector<double> dydt(s.values.size());
    CHECK_THROWS_AS(gaptooth_rhs(s.values, lay, ModelParams{}, CouplingOptions{}, dydt),
                    std::domain_error);
}

TEST_CASE("reference spectrum: clusters and named modes") {
    const PatchLayout lay = reference_layout();
    const ModelParams m{15.0, 0.0, 0.5, 1.0};
    const CoupledState rest = CoupledState::uniform(lay, 1.0, 0.0, 0.0);
    const Spectrum spec = jacobian_spectrum(rest.values, lay, m, CouplingOptions{});
    REQUIRE(static_cast<int>(spec.eigenvalues.size()) == lay.dof_count());

    CHECK(spec.eigenvalues.front().real() <= 1e-6);
    // Zero mode from conservation of fluid.
    CHECK(std::abs(spec.eigenvalues.front()) <= 1e-6);

    int macro = 0, conj_pairs = 0, shear_like = 0;
    bool has_homogeneous_shear = false;
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
        const auto l = spec.eigenvalues[i];
        if (spec.classes[i] == ModeClass::Macroscale) {
            ++macro;
            if (l.imag() > 1e-6) ++conj_pairs;
            if (std::abs(l.imag()) < 1e-6 &&
                std::abs(l.real() + 0.167) <= 0.1 * 0.167 + 0.01)
                has_homogeneous_shear = true;
        }
        if (spec.classes[i] == ModeClass::ShearDecay) ++shear_like;
        if (spec.classes[i] != ModeClass::Macroscale) CHECK(l.real() < -1.0);
    }
    CHECK(macro >= 8);
    CHECK(conj_pairs >= 2);
    CHECK(has_homogeneous_shear);
    CHECK(shear_like > 0);
}

TEST_CASE("coupling variants stay consistent at the reference point") {
    // The unit-offset interpolation and the extrapolated edge-flux depth
    // leave uniform equilibria stationary too.
    const PatchLayout lay = reference_layout();
    const ModelParams m{15.0, 0.0, 0.5, 1.0};
    const CoupledState rest = CoupledState::uniform(lay, 1.0, 0.0, 0.0);
    std::vector<double> dydt(rest.values.size());
    CouplingOptions opt;
    opt.interpolation = InterpolationMode::UnitOffset;
    opt.edge_flux_depth = EdgeFluxDepth::Extrapolate;
    gaptooth_rhs(rest.values, lay, m, opt, dydt);
    for (const double v : dydt) CHECK(std::abs(v) <= 1e-14);
}

}  // TEST_SUITE
