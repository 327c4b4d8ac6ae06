#include "abreu/errors.hpp"
#include "abreu/estimates.hpp"
#include "abreu/solver.hpp"

#include "oracle_helpers.hpp"

#include <doctest.h>

using namespace abreu;
using namespace oracles;

namespace {

SymplecticPotential square_gold() {
    return SymplecticPotential::canonical(unit_square()).normalized();
}

SymplecticPotential simplex_gold() {
    return SymplecticPotential::canonical(simplex()).normalized();
}

} // namespace

TEST_SUITE("estimates") {

TEST_CASE("barrier lower bound") {
    SUBCASE("zero data gives a trivial bound") {
        const Polygon sq = unit_square();
        const SymplecticPotential quad = SymplecticPotential::polynomial_only(
            sq, 2, bernstein_fit(2, sq.shape().bbox(), [](Vec2 p) {
                return 0.5 * (p.x * p.x + p.y * p.y);
            }));
        const CheckRecord rec = barrier_lower_bound(quad, ScalarField::from_constant(0.0),
                                                    {{0.3, 0.4}, {0.7, 0.6}});
        CHECK(rec.pass);
    }
    SUBCASE("gold square at the center and near the boundary") {
        const SymplecticPotential gold = square_gold();
        const CheckRecord rec = barrier_lower_bound(gold, ScalarField::from_constant(4.0),
                                                    {{0.5, 0.5}, {0.01, 0.5}});
        CHECK(rec.pass);
        CHECK(rec.margin > 0.0);
        // det at (0.01, 0.5) is 1/(x(1-x) y(1-y)) ~ 404
        const double det = gold.jet({0.01, 0.5}).hess.det();
        CHECK(det == doctest::Approx(1.0 / (0.01 * 0.99 * 0.25)).epsilon(1e-10));
    }
    SUBCASE("gold simplex grid") {
        const SymplecticPotential gold = simplex_gold();
        const CheckRecord rec = barrier_lower_bound(
            gold, ScalarField::from_constant(6.0), interior_grid(simplex(), 9, 0.01));
        CHECK(rec.pass);
    }
}

TEST_CASE("determinant upper bound within sections") {
    SUBCASE("closed-form quadratic on a disc-like section") {
        // u~ = |x|^2/2 - 1/2 on the unit disc: C = 1, a = 0, det = 1
        Polygon box({{-2, -2}, {2, -2}, {2, 2}, {-2, 2}}, {1, 1, 1, 1}, {0, 0});
        const SymplecticPotential quad = SymplecticPotential::polynomial_only(
            box, 2, bernstein_fit(2, box.shape().bbox(), [](Vec2 p) {
                return 0.5 * (p.x * p.x + p.y * p.y);
            }));
        const CheckRecord rec =
            det_upper_in_section(quad, ScalarField::from_constant(0.0), {0, 0}, 0.5);
        CHECK(rec.pass);
        CHECK(rec.meta.at("C") == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(rec.meta.at("a") == doctest::Approx(0.0));
    }
    SUBCASE("gold square sweep") {
        const SymplecticPotential gold = square_gold();
        for (double t : {0.05, 0.1, 0.2}) {
            const CheckRecord rec =
                det_upper_in_section(gold, ScalarField::from_constant(4.0), {0.5, 0.5}, t);
            CHECK(rec.pass);
            CHECK(rec.margin > 0.0);
        }
    }
    SUBCASE("rescaling does not change the verdict") {
        const SymplecticPotential gold = square_gold();
        const CheckRecord rec =
            det_upper_in_section(gold, ScalarField::from_constant(4.0), {0.5, 0.5}, 0.1);
        // exact scaling: margins transform monotonically, the pass flag is invariant
        CHECK(rec.pass);
    }
}

TEST_CASE("boundary determinant asymptotics on the gold square") {
    const SymplecticPotential gold = square_gold();
    const std::vector<FaceAsymptotics> fits = boundary_asymptotics(gold);
    REQUIRE(fits.size() == 4);
    for (const FaceAsymptotics& f : fits) {
        CHECK(f.limit == doctest::Approx(4.0).epsilon(0.02));
        CHECK(f.fit_residual < 0.05 * f.limit);
    }
    const std::vector<FaceAsymptotics> sx = boundary_asymptotics(simplex_gold());
    for (const FaceAsymptotics& f : sx) {
        CHECK(f.limit > 0.0);
        CHECK(std::isfinite(f.limit));
    }
}

TEST_CASE("mean value identity") {
    SUBCASE("vanishing data: everything is zero") {
        Polygon box({{-2, -2}, {2, -2}, {2, 2}, {-2, 2}}, {1, 1, 1, 1}, {0, 0});
        const SymplecticPotential quad = SymplecticPotential::polynomial_only(
            box, 2, bernstein_fit(2, box.shape().bbox(), [](Vec2 p) {
                return 0.5 * (p.x * p.x + p.y * p.y);
            }));
        const MeanValueIdentity mv =
            mean_value_identity(quad, ScalarField::from_constant(0.0), {0, 0}, 0.5);
        CHECK(std::abs(mv.lhs) < 1e-10);
        CHECK(std::abs(mv.I) < 1e-10);
        CHECK(std::abs(mv.II) < 1e-10);
    }
    SUBCASE("gold square on the centered disc") {
        const SymplecticPotential gold = square_gold();
        const MeanValueIdentity mv =
            mean_value_identity(gold, ScalarField::from_constant(4.0), {0.5, 0.5}, 0.2);
        CHECK(mv.rel_residual < 1e-3);
        CHECK(mv.bound_lhs <= mv.bound_rhs);
        CHECK(mv.bound_rhs > 0.0);
    }
    SUBCASE("refinement halves the residual on an asymmetric configuration") {
        // manufactured data: A = S(u) pointwise makes the identity exact for
        // any potential in the class, off the symmetry axis the quadrature
        // error is visible and must contract under refinement
        const Polygon sq = unit_square();
        const auto bump = bernstein_fit(6, sq.shape().bbox(), [](Vec2 p) {
            const double sx = p.x * (1 - p.x), sy = p.y * (1 - p.y);
            return 0.4 * sx * sx * sy * sy * (1.0 + p.x + 0.5 * p.y);
        });
        const SymplecticPotential pot =
            SymplecticPotential::with_correction(sq, 6, bump).normalized();
        REQUIRE(convexity_audit(pot).convex());
        const ScalarField A{[&](Vec2 p) { return hessian_package(pot.jet(p)).S; },
                            "manufactured", std::nullopt};
        const MeanValueIdentity coarse =
            mean_value_identity(pot, A, {0.55, 0.47}, 0.2, 1, 2, 6);
        const MeanValueIdentity fine =
            mean_value_identity(pot, A, {0.55, 0.47}, 0.2, 2, 3, 12);
        CHECK(coarse.rel_residual > 1e-6); // measurably above the floor
        CHECK(fine.rel_residual <= 0.5 * coarse.rel_residual);
    }
    SUBCASE("disc escaping the domain is rejected") {
        CHECK_THROWS_AS(mean_value_identity(square_gold(), ScalarField::from_constant(4.0),
                                            {0.5, 0.5}, 0.6),
                        input_error);
    }
}

TEST_CASE("interior bounds report") {
    const SymplecticPotential gold = square_gold();
    const InteriorBounds ib = interior_bounds_report(gold);
    CHECK(ib.boundary_integral == doctest::Approx(8 * std::log(2.0) - 2.0).epsilon(1e-8));
    CHECK(ib.implied_lambda == doctest::Approx((8 * std::log(2.0) - 2.0) / 2).epsilon(1e-8));
    CHECK(ib.sup_grad_d2 > 0.0);
    CHECK(std::isfinite(ib.fit_C0));
    CHECK(ib.fit_max_violation >= 0.0);
}

TEST_CASE("chi integral") {
    SUBCASE("gold square equals -8") {
        CHECK(chi_of(square_gold()) == doctest::Approx(-8.0).epsilon(1e-6));
    }
    SUBCASE("invariant under convexity-preserving perturbations") {
        const Polygon sq = unit_square();
        std::vector<SymplecticPotential> pots;
        pots.push_back(square_gold());
        const auto bump1 = bernstein_fit(4, sq.shape().bbox(), [](Vec2 p) {
            return 0.05 * p.x * p.x * (1 - p.x) * (1 - p.x) * p.y * p.y * (1 - p.y) *
                   (1 - p.y);
        });
        pots.push_back(SymplecticPotential::with_correction(sq, 4, bump1));
        const auto bump2 = bernstein_fit(6, sq.shape().bbox(), [](Vec2 p) {
            const double sx = p.x * (1 - p.x), sy = p.y * (1 - p.y);
            return 0.03 * sx * sx * sy * sy * (1.0 + p.x);
        });
        pots.push_back(SymplecticPotential::with_correction(sq, 6, bump2));
        const auto bump3 = bernstein_fit(6, sq.shape().bbox(), [](Vec2 p) {
            const double sx = p.x * (1 - p.x), sy = p.y * (1 - p.y);
            return 0.04 * sx * sy * sx * sy * (1.0 + p.y - p.x);
        });
        pots.push_back(SymplecticPotential::with_correction(sq, 6, bump3));
        for (const auto& p : pots) REQUIRE(convexity_audit(p).convex());
        const ChiValues chi = chi_invariant(pots);
        for (double v : chi.values) CHECK(v == doctest::Approx(-8.0).epsilon(2e-4));
        CHECK(chi.spread < 1e-3);
    }
    SUBCASE("gold simplex regression value") {
        // closed form: |F|^2 = 12, S^2 = 36 constant, area 1/2; the deepest
        // graded cells sit at face distance ~5e-7 where the fourth-order
        // contractions keep ~4 digits, bounding the defect near 1e-4
        CHECK(chi_of(simplex_gold()) == doctest::Approx(-12.0).epsilon(5e-4));
    }
}

TEST_CASE("interior Hessian bound on sublevel sets") {
    SUBCASE("closed-form quadratic case") {
        Polygon box({{-1.1, -1.1}, {1.1, -1.1}, {1.1, 1.1}, {-1.1, 1.1}}, {1, 1, 1, 1},
                    {0, 0});
        const SymplecticPotential quad = SymplecticPotential::polynomial_only(
            box, 2, bernstein_fit(2, box.shape().bbox(), [](Vec2 p) {
                return 0.5 * (p.x * p.x + p.y * p.y);
            }));
        const PogorelovReport rep = pogorelov_check(quad, 0.5);
        // c0 = 1/2, c1 = c2 = 0, c3 = 1, N = 2, K = e^{1/2}(1 + sqrt(2)) ~ 3.98
        CHECK(rep.c0 == doctest::Approx(0.5).epsilon(0.02));
        CHECK(rep.c1 == doctest::Approx(0.0).epsilon(1e-8));
        CHECK(rep.c2 == doctest::Approx(0.0).epsilon(1e-8));
        CHECK(rep.c3 == doctest::Approx(1.0).epsilon(0.02));
        CHECK(rep.K == doctest::Approx(0.5 * std::exp(0.5) * (2 + 2 * std::sqrt(2.0)))
                           .epsilon(0.05));
        CHECK(rep.K == doctest::Approx(3.98).epsilon(0.05));
        CHECK(rep.max_lhs <= 0.5 + 1e-6);
        CHECK(rep.pass);
    }
    SUBCASE("gold square at a safe level") {
        const PogorelovReport rep = pogorelov_check(square_gold(), 0.1);
        CHECK(rep.pass);
        CHECK(rep.max_lhs < rep.K);
    }
    SUBCASE("level touching the boundary is rejected") {
        CHECK_THROWS_AS(pogorelov_check(square_gold(), 10.0), input_error);
    }
}

TEST_CASE("curvature energy reports") {
    SUBCASE("quadratic: all zeros") {
        Polygon box({{-2, -2}, {2, -2}, {2, 2}, {-2, 2}}, {1, 1, 1, 1}, {0, 0});
        const SymplecticPotential quad = SymplecticPotential::polynomial_only(
            box, 2, bernstein_fit(2, box.shape().bbox(), [](Vec2 p) {
                return 0.5 * (p.x * p.x + p.y * p.y);
            }));
        std::vector<Vec2> kv = {{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}};
        const CurvatureReport rep = curvature_reports(quad, {0, 0}, 0.5, ConvexPoly(kv));
        CHECK(rep.energy == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(rep.G2_center == doctest::Approx(0.0));
        CHECK(rep.Phi_max == doctest::Approx(0.0));
    }
    SUBCASE("gold square disc energy") {
        const SymplecticPotential gold = square_gold();
        std::vector<Vec2> kv = {{0.35, 0.35}, {0.65, 0.35}, {0.65, 0.65}, {0.35, 0.65}};
        const CurvatureReport rep =
            curvature_reports(gold, {0.5, 0.5}, 0.25, ConvexPoly(kv));
        // |F|^2 = 8 constant: energy = 8 pi R^2 = pi/2
        CHECK(rep.energy == doctest::Approx(M_PI / 2.0).epsilon(1e-8));
        CHECK(rep.G2_center == doctest::Approx(8.0).epsilon(1e-10));
        CHECK(rep.Phi_max > 0.0);
    }
}

TEST_CASE("verification flags a potential that does not solve the equation") {
    // a convexity-preserving bump leaves the boundary class but breaks
    // S(u) = A; the conjugate-function checks see the lost divergence
    const Polygon sq = unit_square();
    const auto bump = bernstein_fit(6, sq.shape().bbox(), [](Vec2 p) {
        const double sx = p.x * (1 - p.x), sy = p.y * (1 - p.y);
        return 0.5 * sx * sx * sy * sy * (1.0 + p.x);
    });
    const SymplecticPotential off =
        SymplecticPotential::with_correction(sq, 6, bump).normalized();
    REQUIRE(convexity_audit(off).convex());
    const VerificationReport report =
        run_verification(off, ScalarField::from_constant(4.0));
    CHECK(!report.all_pass());
    bool loop_failed = false;
    for (const CheckRecord& c : report.checks)
        if (c.id == "conjugate_loop_closure" && !c.pass) loop_failed = true;
    CHECK(loop_failed);
}

TEST_CASE("full verification suite passes on both golds") {
    SUBCASE("square") {
        const VerificationReport report =
            run_verification(square_gold(), ScalarField::from_constant(4.0));
        for (const CheckRecord& c : report.checks) {
            INFO(c.id, " margin ", c.margin);
            CHECK((c.report_only || c.pass));
        }
        CHECK(report.all_pass());
    }
    SUBCASE("simplex") {
        const VerificationReport report =
            run_verification(simplex_gold(), ScalarField::from_constant(6.0));
        for (const CheckRecord& c : report.checks) {
            INFO(c.id, " margin ", c.margin);
            CHECK((c.report_only || c.pass));
        }
        CHECK(report.all_pass());
    }
}

} // TEST_SUITE
