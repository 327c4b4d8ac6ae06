#include "abreu/errors.hpp"
#include "abreu/stability.hpp"

#include "oracle_helpers.hpp"

#include <doctest.h>

using namespace abreu;
using namespace oracles;

TEST_SUITE("stability") {

TEST_CASE("the functional kills constants when A comes from the measures") {
    const Polygon sq = unit_square();
    const CreasedPL one{{0, 0}, 1.0}; // f = max(0, 1) = 1... crease with a = 0 is degenerate
    // evaluate via the quadrature route instead
    const LinFuncValue lv = linfunc(
        sq, ScalarField::from_constant(4.0), [](Vec2) { return 1.0; },
        [](std::size_t, double, Vec2) { return 1.0; });
    CHECK(std::abs(lv.L) < 1e-10);
    CHECK(lv.boundary_integral == doctest::Approx(4.0).epsilon(1e-12));
    (void)one;
}

TEST_CASE("creased test function on the square: exact values") {
    const Polygon sq = unit_square();
    const CreasedPL f{{1, 0}, -0.75}; // max(0, x - 3/4)
    const LinFuncValue lv = linfunc(sq, ScalarField::from_constant(4.0), f);
    CHECK(lv.boundary_integral == doctest::Approx(5.0 / 16.0).epsilon(1e-14));
    CHECK(lv.L == doctest::Approx(3.0 / 16.0).epsilon(1e-13));
}

TEST_CASE("creased quadrature agrees with exact clipping") {
    const Polygon sq = unit_square();
    const CreasedPL f{{0.6, 0.8}, -0.8};
    REQUIRE(f.admissible(sq.base_point()));
    const LinFuncValue exact = linfunc(sq, ScalarField::from_constant(4.0), f);

    // quadrature route over the clipped support (the integrand is affine
    // there): force it by disguising the constant A as a callable
    ScalarField A_callable{[](Vec2) { return 4.0; }, "4", std::nullopt};
    const LinFuncValue quad = linfunc(sq, A_callable, f);
    CHECK(quad.L == doctest::Approx(exact.L).epsilon(1e-10));
    CHECK(quad.boundary_integral ==
          doctest::Approx(exact.boundary_integral).epsilon(1e-10));

    // blind quadrature across the crease only resolves the kink to the
    // grading depth
    const LinFuncValue blind = linfunc(
        sq, ScalarField::from_constant(4.0), [&](Vec2 p) { return f(p); },
        [&](std::size_t, double, Vec2 p) { return f(p); }, 14, 7);
    CHECK(blind.L == doctest::Approx(exact.L).epsilon(1e-4));
}

TEST_CASE("the functional is linear") {
    const Polygon sq = unit_square();
    const ScalarField A = ScalarField::from_constant(4.0);
    auto f = [](Vec2 p) { return p.x * p.x + 0.2 * p.y; };
    auto g = [](Vec2 p) { return std::cos(p.x) * p.y; };
    const double alpha = 1.7, beta = -0.6;
    const LinFuncValue lf = linfunc(sq, A, f, [&](std::size_t, double, Vec2 p) { return f(p); });
    const LinFuncValue lg = linfunc(sq, A, g, [&](std::size_t, double, Vec2 p) { return g(p); });
    auto combo = [&](Vec2 p) { return alpha * f(p) + beta * g(p); };
    const LinFuncValue lc =
        linfunc(sq, A, combo, [&](std::size_t, double, Vec2 p) { return combo(p); });
    CHECK(lc.L == doctest::Approx(alpha * lf.L + beta * lg.L).epsilon(1e-12));
}

TEST_CASE("the normalised gold potential evaluates to n times the volume") {
    // integrating the pointwise trace identity u^{ij} u_ij = n over the
    // polygon gives L(u) = n Vol; the unit square has volume 1
    const Polygon sq = unit_square();
    const SymplecticPotential gold = SymplecticPotential::canonical(sq).normalized();
    const LinFuncValue lv = linfunc(sq, ScalarField::from_constant(4.0), gold);
    CHECK(lv.L == doctest::Approx(2.0).epsilon(1e-6));

    const Polygon sx = simplex();
    const SymplecticPotential gold_sx = SymplecticPotential::canonical(sx).normalized();
    const LinFuncValue lv_sx = linfunc(sx, ScalarField::from_constant(6.0), gold_sx);
    CHECK(lv_sx.L == doctest::Approx(2.0 * sx.area()).epsilon(1e-6));

    // closed form for the simplex: boundary integral -3/2 + 3 log 3
    CHECK(lv_sx.boundary_integral ==
          doctest::Approx(-1.5 + 3 * std::log(3.0)).epsilon(1e-8));
}

TEST_CASE("affine kernel residuals") {
    const Polygon sq = unit_square();
    const KernelResiduals ok = affine_kernel_check(sq, ScalarField::from_constant(4.0));
    CHECK(ok.pass());
    CHECK(std::abs(ok.on_one) < 1e-12);
    CHECK(std::abs(ok.on_x) < 1e-12);
    CHECK(std::abs(ok.on_y) < 1e-12);

    const KernelResiduals bad = affine_kernel_check(sq, ScalarField::from_constant(5.0));
    CHECK(!bad.pass());
    CHECK(bad.on_one == doctest::Approx(-1.0).epsilon(1e-13));

    const KernelResiduals sx = affine_kernel_check(simplex(), ScalarField::from_constant(6.0));
    CHECK(sx.pass());
}

TEST_CASE("lambda lower bound on the unit square") {
    const Polygon sq = unit_square();
    const ScalarField A = ScalarField::from_constant(4.0);

    // closed form for the axis crease x >= t: ratio (2 - t)/t
    const CreasedPL at34{{1, 0}, -0.75};
    const LinFuncValue lv = linfunc(sq, A, at34);
    CHECK(lv.boundary_integral / lv.L == doctest::Approx(5.0 / 3.0).epsilon(1e-13));

    // tail: the ratio approaches 1 as the crease slides to the far edge
    for (double eps : {0.05, 0.02, 0.01}) {
        const CreasedPL f{{1, 0}, -(1.0 - eps)};
        const LinFuncValue v = linfunc(sq, A, f);
        CHECK(v.boundary_integral / v.L ==
              doctest::Approx((2.0 - (1.0 - eps)) / (1.0 - eps)).epsilon(1e-10));
    }

    const LambdaBound lb = lambda_lower_bound(sq, A, {60, 40});
    CHECK(lb.lambda_lb >= 5.0 / 3.0);
    CHECK(!lb.destabilizer.has_value());

    // refinement can only improve the bound
    const LambdaBound fine = lambda_lower_bound(sq, A, {120, 80});
    CHECK(fine.lambda_lb >= lb.lambda_lb - 1e-12);
}

TEST_CASE("creases through the base point are rejected") {
    const CreasedPL f{{1, 0}, -0.25}; // positive at (1/2, 1/2)
    CHECK(!f.admissible(unit_square().base_point()));
    const LambdaBound lb =
        lambda_lower_bound(unit_square(), ScalarField::from_constant(4.0), {16, 8});
    CHECK(lb.skipped == 0); // sweep construction only emits admissible offsets
}

TEST_CASE("inadmissible data is rejected before the sweep") {
    CHECK_THROWS_AS(
        lambda_lower_bound(unit_square(), ScalarField::from_constant(5.0), {8, 8}),
        input_error);
}

} // TEST_SUITE
