#include "abreu/calculus.hpp"
#include "abreu/errors.hpp"
#include "abreu/potential.hpp"

#include "oracle_helpers.hpp"

#include <doctest.h>

#include <random>

using namespace abreu;
using namespace oracles;

TEST_SUITE("calculus") {

TEST_CASE("quadratic jet: identity Hessian") {
    const PointState st = hessian_package(quadratic_jet({0.2, 0.4}, {1, 0, 1}));
    CHECK(st.hess_inv.xx == doctest::Approx(1.0));
    CHECK(st.L == doctest::Approx(0.0));
    CHECK(norm(st.v) == doctest::Approx(0.0));
    CHECK(st.S == doctest::Approx(0.0));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) CHECK(st.d1[i][j][k] == 0.0);
}

TEST_CASE("constant anisotropic Hessian") {
    const PointState st = hessian_package(quadratic_jet({0, 0}, {2, 0, 0.5}));
    CHECK(st.det_hess == doctest::Approx(1.0));
    CHECK(st.L == doctest::Approx(0.0));
    CHECK(norm(st.v) == doctest::Approx(0.0));
}

TEST_CASE("square gold at (1/4, 1/2)") {
    const PointState st = hessian_package(square_gold_jet({0.25, 0.5}));
    CHECK(st.det_hess == doctest::Approx(64.0 / 3.0).epsilon(1e-12));
    CHECK(st.L == doctest::Approx(std::log(64.0 / 3.0)).epsilon(1e-12));
    // v = (2x-1, 2y-1)
    CHECK(st.v.x == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(st.v.y == doctest::Approx(0.0));
    // pointwise inverse identity
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
            double s = 0;
            for (int j = 0; j < 2; ++j) s += st.hess_inv(i, j) * st.jet.hess(j, k);
            CHECK(s == doctest::Approx(i == k ? 1.0 : 0.0).epsilon(1e-10));
        }
    CHECK(st.det_hess * st.hess_inv.det() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("non-convex jet is rejected with location") {
    Jet4 j = quadratic_jet({0.3, 0.4}, {1, 0, -1});
    CHECK_THROWS_WITH_AS(hessian_package(j), doctest::Contains("0.3"), domain_error);
}

TEST_CASE("derivative arrays match finite differences of the inverse") {
    const SymplecticPotential pot = SymplecticPotential::canonical(simplex());
    for (const Vec2 p : {Vec2{0.3, 0.3}, Vec2{0.2, 0.45}, Vec2{0.4, 0.15}}) {
        const PointState st = hessian_package(pot.jet(p));
        auto hinv_entry = [&](Vec2 q, int a, int b) {
            return hessian_package(pot.jet(q)).hess_inv(a, b);
        };
        for (int i = 0; i < 2; ++i)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const double fd =
                        fd1([&](Vec2 q) { return hinv_entry(q, a, b); }, p, i, 1e-5);
                    CHECK(st.d1[i][a][b] == doctest::Approx(fd).epsilon(1e-5));
                }
        for (int i = 0; i < 2; ++i)
            for (int l = 0; l < 2; ++l)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        const double fd = fd1(
                            [&](Vec2 q) {
                                const PointState s2 = hessian_package(pot.jet(q));
                                return s2.d1[i][a][b];
                            },
                            p, l, 1e-5);
                        CHECK(st.d2[i][l][a][b] == doctest::Approx(fd).epsilon(1e-4));
                    }
    }
}

TEST_CASE("cofactor matrix is divergence free") {
    const SymplecticPotential pot = SymplecticPotential::canonical(unit_square());
    for (const Vec2 p : {Vec2{0.4, 0.35}, Vec2{0.6, 0.7}}) {
        for (int i = 0; i < 2; ++i) {
            double div = 0.0;
            for (int j = 0; j < 2; ++j)
                div += fd1(
                    [&](Vec2 q) {
                        return hessian_package(pot.jet(q)).cofactor(i, j);
                    },
                    p, j, 1e-5);
            CHECK(std::abs(div) < 1e-6);
        }
    }
}

TEST_CASE("the log-gradient identity is exact algebra") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const Jet4 j = random_convex_polynomial_jet(rng, {0.2, -0.1});
        const PointState st = hessian_package(j);
        const Vec2 Li = log_det_gradient(st);
        for (int i = 0; i < 2; ++i) {
            double lhs = 0, rhs = 0;
            for (int k = 0; k < 2; ++k) {
                lhs += st.hess_inv(i, k) * Li[k];
                rhs -= st.d1[k][k][i];
            }
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("the three routes to S agree") {
    SUBCASE("quadratic") {
        const SForms f = abreu_S_forms(hessian_package(quadratic_jet({0, 0}, {1, 0, 1})));
        CHECK(f.S1 == doctest::Approx(0.0));
        CHECK(f.S4 == doctest::Approx(0.0));
        CHECK(f.S5 == doctest::Approx(0.0));
    }
    SUBCASE("square gold is S = 4 everywhere") {
        const SymplecticPotential pot = SymplecticPotential::canonical(unit_square());
        for (const Vec2 p : {Vec2{0.5, 0.5}, Vec2{0.25, 0.7}, Vec2{0.04, 0.93}}) {
            const SForms f = abreu_S_forms(hessian_package(pot.jet(p)));
            CHECK(f.S1 == doctest::Approx(4.0).epsilon(1e-9));
            CHECK(f.S4 == doctest::Approx(4.0).epsilon(1e-9));
            CHECK(f.S5 == doctest::Approx(4.0).epsilon(1e-9));
        }
    }
    SUBCASE("simplex gold is S = 6, matching the measures") {
        const Polygon sx = simplex();
        REQUIRE(measures_and_A(sx).A_const == doctest::Approx(6.0));
        const SymplecticPotential pot = SymplecticPotential::canonical(sx);
        for (const Vec2 p : {Vec2{1 / 3.0, 1 / 3.0}, Vec2{0.1, 0.2}, Vec2{0.05, 0.9}}) {
            const SForms f = abreu_S_forms(hessian_package(pot.jet(p)));
            CHECK(f.S1 == doctest::Approx(6.0).epsilon(1e-8));
            CHECK(f.max_dev / 6.0 < 1e-8);
        }
    }
    SUBCASE("random convex polynomial jets") {
        std::mt19937_64 rng(17);
        for (int trial = 0; trial < 100; ++trial) {
            const Jet4 j = random_convex_polynomial_jet(rng, {0.15, -0.2});
            const SForms f = abreu_S_forms(hessian_package(j));
            CHECK(f.max_dev <= 1e-8 * std::max(1.0, std::abs(f.S1)));
        }
    }
}

TEST_CASE("vector fields") {
    SUBCASE("square gold: w is constant for origin zero") {
        const SymplecticPotential pot = SymplecticPotential::canonical(unit_square());
        for (const Vec2 p : {Vec2{0.3, 0.3}, Vec2{0.7, 0.2}, Vec2{0.5, 0.9}}) {
            const VectorFields vf = vector_fields(hessian_package(pot.jet(p)), 4.0, {0, 0});
            CHECK(vf.w.x == doctest::Approx(-1.0).epsilon(1e-10));
            CHECK(vf.w.y == doctest::Approx(-1.0).epsilon(1e-10));
            CHECK(vf.h_grad_residual < 1e-10);
        }
    }
    SUBCASE("quadratic h") {
        const Vec2 p{0.4, -0.3};
        const VectorFields vf = vector_fields(hessian_package(quadratic_jet(p, {1, 0, 1})),
                                              0.0, {0, 0});
        CHECK(vf.h == doctest::Approx(-0.5 * norm2(p)).epsilon(1e-13));
        CHECK(vf.h_grad_residual < 1e-12);
    }
    SUBCASE("h-gradient identity on random jets") {
        std::mt19937_64 rng(23);
        for (int trial = 0; trial < 50; ++trial) {
            const VectorFields vf = vector_fields(
                hessian_package(random_convex_polynomial_jet(rng, {0.3, 0.1})), 2.0,
                {0.05, -0.02});
            CHECK(vf.h_grad_residual < 1e-10);
        }
    }
}

TEST_CASE("curvature tensors") {
    SUBCASE("quadratic: all zero") {
        const CurvaturePack cp =
            curvature_tensors(hessian_package(quadratic_jet({0, 0}, {2, 0.3, 1})));
        CHECK(cp.normF2 == doctest::Approx(0.0));
        CHECK(cp.normG2 == doctest::Approx(0.0));
        CHECK(cp.S == doctest::Approx(0.0));
    }
    SUBCASE("square gold: the separable closed form") {
        const SymplecticPotential pot = SymplecticPotential::canonical(unit_square());
        for (const Vec2 p : {Vec2{0.5, 0.5}, Vec2{0.2, 0.8}}) {
            const CurvaturePack cp = curvature_tensors(hessian_package(pot.jet(p)));
            CHECK(cp.F_mixed[0][0][0][0] == doctest::Approx(2.0).epsilon(1e-10));
            CHECK(cp.F_mixed[1][1][1][1] == doctest::Approx(2.0).epsilon(1e-10));
            CHECK(std::abs(cp.F_mixed[0][0][1][1]) < 1e-10);
            CHECK(std::abs(cp.F_mixed[0][1][0][1]) < 1e-10);
            CHECK(cp.normF2 == doctest::Approx(8.0).epsilon(1e-10));
            CHECK(cp.normG2 == doctest::Approx(8.0).epsilon(1e-10));
            CHECK(cp.S == doctest::Approx(4.0).epsilon(1e-10));
        }
    }
    SUBCASE("trace of G equals S from the forms") {
        const SymplecticPotential pot = SymplecticPotential::canonical(simplex());
        const PointState st = hessian_package(pot.jet({0.3, 0.25}));
        const CurvaturePack cp = curvature_tensors(st);
        CHECK(cp.S == doctest::Approx(abreu_S_forms(st).S1).epsilon(1e-12));
        CHECK(cp.S == doctest::Approx(6.0).epsilon(1e-9));
        CHECK(cp.normF2 == doctest::Approx(12.0).epsilon(1e-9));
        CHECK(cp.normG2 == doctest::Approx(18.0).epsilon(1e-9));
    }
    SUBCASE("pair symmetry of the lowered tensor on random jets") {
        std::mt19937_64 rng(31);
        for (int trial = 0; trial < 50; ++trial) {
            const CurvaturePack cp = curvature_tensors(
                hessian_package(random_convex_polynomial_jet(rng, {-0.1, 0.25})));
            double scale = 1e-30;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int k = 0; k < 2; ++k)
                        for (int l = 0; l < 2; ++l)
                            scale = std::max(scale, std::abs(cp.F_lower[i][j][k][l]));
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int k = 0; k < 2; ++k)
                        for (int l = 0; l < 2; ++l)
                            CHECK(std::abs(cp.F_lower[i][j][k][l] - cp.F_lower[k][l][i][j]) <=
                                  1e-9 * scale);
        }
    }
}

TEST_CASE("block metric") {
    SUBCASE("identity for the quadratic") {
        const auto g = guillemin_metric(hessian_package(quadratic_jet({0, 0}, {1, 0, 1})));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(g[i][j] == doctest::Approx(i == j ? 1.0 : 0.0));
    }
    SUBCASE("square gold at the center") {
        const auto g = guillemin_metric(
            hessian_package(SymplecticPotential::canonical(unit_square()).jet({0.5, 0.5})));
        CHECK(g[0][0] == doctest::Approx(4.0));
        CHECK(g[1][1] == doctest::Approx(4.0));
        CHECK(g[2][2] == doctest::Approx(0.25));
        CHECK(g[3][3] == doctest::Approx(0.25));
    }
    SUBCASE("unit determinant everywhere") {
        std::mt19937_64 rng(41);
        for (int trial = 0; trial < 30; ++trial) {
            const auto g = guillemin_metric(
                hessian_package(random_convex_polynomial_jet(rng, {0.2, 0.2})));
            const double det = (g[0][0] * g[1][1] - g[0][1] * g[1][0]) *
                               (g[2][2] * g[3][3] - g[2][3] * g[3][2]);
            CHECK(det == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("variation fields") {
    SUBCASE("affine perturbation gives zero") {
        const SymplecticPotential pot = SymplecticPotential::canonical(unit_square());
        Jet4 eps;
        eps.location = {0.4, 0.6};
        eps.value = 1.0;
        eps.grad = {2.0, -1.0}; // hess and third vanish
        const VariationFields vf =
            variation_ZW(hessian_package(pot.jet({0.4, 0.6})), eps);
        CHECK(norm(vf.Z) == doctest::Approx(0.0));
        CHECK(norm(vf.W) == doctest::Approx(0.0));
    }
    SUBCASE("quadratic base: F, G, S all vanish, so Z = W = 0") {
        std::mt19937_64 rng(43);
        const Jet4 eps = random_convex_polynomial_jet(rng, {0.1, 0.1});
        const VariationFields vf =
            variation_ZW(hessian_package(quadratic_jet({0.1, 0.1}, {1.5, 0.2, 1.0})), eps);
        CHECK(norm(vf.Z) == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(norm(vf.W) == doctest::Approx(0.0).epsilon(1e-14));
    }
    SUBCASE("divergence of Z and W matches the time derivative of the norms") {
        // u_t = u0 + t * eps with eps = x^2 y^2 on the square gold
        const Polygon poly = unit_square();
        const SymplecticPotential pot = SymplecticPotential::canonical(poly);
        auto eps_jet = [](Vec2 p) {
            Jet4 e;
            e.location = p;
            const double x = p.x, y = p.y;
            e.value = x * x * y * y;
            e.grad = {2 * x * y * y, 2 * x * x * y};
            e.hess = {2 * y * y, 4 * x * y, 2 * x * x};
            e.third.v = {0.0, 4 * y, 4 * x, 0.0};
            e.fourth.v = {0.0, 0.0, 4.0, 0.0, 0.0};
            return e;
        };
        auto norms_at = [&](Vec2 p, double t) {
            const Jet4 j = pot.jet(p).fma(t, eps_jet(p));
            const CurvaturePack cp = curvature_tensors(hessian_package(j));
            return std::make_pair(0.5 * (cp.normF2 - cp.normG2),
                                  0.5 * (cp.normG2 - cp.S * cp.S));
        };
        const Vec2 p{0.45, 0.55};
        const double dt = 1e-5;
        const auto [fp, gp] = norms_at(p, dt);
        const auto [fm, gm] = norms_at(p, -dt);
        const double dF_dt = (fp - fm) / (2 * dt);
        const double dG_dt = (gp - gm) / (2 * dt);

        auto Z_at = [&](Vec2 q) {
            return variation_ZW(hessian_package(pot.jet(q)), eps_jet(q));
        };
        const double h = 1e-4;
        const double divZ = (Z_at({p.x + h, p.y}).Z.x - Z_at({p.x - h, p.y}).Z.x) / (2 * h) +
                            (Z_at({p.x, p.y + h}).Z.y - Z_at({p.x, p.y - h}).Z.y) / (2 * h);
        const double divW = (Z_at({p.x + h, p.y}).W.x - Z_at({p.x - h, p.y}).W.x) / (2 * h) +
                            (Z_at({p.x, p.y + h}).W.y - Z_at({p.x, p.y - h}).W.y) / (2 * h);
        CHECK(dF_dt == doctest::Approx(divZ).epsilon(1e-4));
        CHECK(dG_dt == doctest::Approx(divW).epsilon(1e-4));
    }
}

TEST_CASE("v is the gradient of L through the gradient map") {
    const SymplecticPotential pot = SymplecticPotential::canonical(unit_square()).normalized();
    const Vec2 x{0.35, 0.6};
    const PointState st = hessian_package(pot.jet(x));
    const Vec2 xi0 = pot.gradient(x);
    auto Lstar = [&](Vec2 xi) {
        const Vec2 y = legendre_inverse(pot, xi, x);
        return std::log(pot.jet(y).hess.det());
    };
    const double h = 1e-6;
    for (int i = 0; i < 2; ++i) {
        Vec2 xp = xi0, xm = xi0;
        xp[i] += h;
        xm[i] -= h;
        const double fd = (Lstar(xp) - Lstar(xm)) / (2 * h);
        CHECK(st.v[i] == doctest::Approx(fd).epsilon(1e-4));
    }
}

TEST_CASE("adding an affine function leaves the state invariant") {
    const Polygon poly = unit_square();
    const SymplecticPotential a = SymplecticPotential::canonical(poly);
    const SymplecticPotential b =
        SymplecticPotential::with_correction(poly, 0, {0.0}, {3.0, {-1.0, 2.0}});
    const Vec2 p{0.42, 0.58};
    const PointState sa = hessian_package(a.jet(p));
    const PointState sb = hessian_package(b.jet(p));
    CHECK(sa.det_hess == sb.det_hess);
    CHECK(sa.L == sb.L);
    CHECK(sa.v.x == sb.v.x);
    CHECK(sa.S == sb.S);
    const CurvaturePack ca = curvature_tensors(sa), cb = curvature_tensors(sb);
    CHECK(ca.normF2 == cb.normF2);
    CHECK(ca.normG2 == cb.normG2);
}

} // TEST_SUITE
