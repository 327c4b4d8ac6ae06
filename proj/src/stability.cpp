#include "abreu/stability.hpp"

#include "abreu/errors.hpp"
#include "abreu/parallel.hpp"
#include "abreu/quadrature.hpp"

#include <cmath>

namespace abreu {

namespace {

// int_0^1 max(0, g0 + (g1-g0) t) dt
double positive_part_mean(double g0, double g1) {
    if (g0 >= 0.0 && g1 >= 0.0) return 0.5 * (g0 + g1);
    if (g0 <= 0.0 && g1 <= 0.0) return 0.0;
    if (g0 < 0.0) return 0.5 * g1 * g1 / (g1 - g0);
    return 0.5 * g0 * g0 / (g0 - g1);
}

// exact integral of dot(a,x)+c over a convex polygon
double affine_over_polygon(const ConvexPoly& poly, const Vec2& a, double c) {
    if (poly.size() < 3) return 0.0;
    const double area = poly.area();
    if (area <= 0.0) return 0.0;
    return area * (dot(a, poly.centroid()) + c);
}

} // namespace

LinFuncValue linfunc(const Polygon& poly, const ScalarField& A, const CreasedPL& f) {
    double bdry = 0.0;
    for (std::size_t k = 0; k < poly.edge_count(); ++k) {
        const EdgeFrame& e = poly.edge(k);
        const double g0 = dot(f.a, e.a) + f.c;
        const double g1 = dot(f.a, e.b) + f.c;
        bdry += e.sigma * e.length * positive_part_mean(g0, g1);
    }
    const ConvexPoly support = poly.shape().clip_halfplane(f.a, f.c);
    double area_term = 0.0;
    if (support.size() >= 3 && support.area() > 0.0) {
        if (A.is_constant()) {
            area_term = *A.constant * affine_over_polygon(support, f.a, f.c);
        } else {
            // integrate the affine part of f against A over its support polygon
            for (const QPoint& q : interior_rule(support, support.centroid(), 10, 7, 6))
                area_term += q.w * A(q.p) * (dot(f.a, q.p) + f.c);
        }
    }
    return {bdry - area_term, bdry};
}

LinFuncValue linfunc(const Polygon& poly, const ScalarField& A,
                     const std::function<double(Vec2)>& interior,
                     const std::function<double(std::size_t, double, Vec2)>& trace,
                     int levels, int order) {
    const double bdry = boundary_integral(poly, trace, levels, order);
    const std::vector<QPoint> rule = interior_rule(poly, levels, order);
    std::vector<double> vals(rule.size());
    parallel_for(rule.size(), [&](std::size_t i) {
        vals[i] = rule[i].w * A(rule[i].p) * interior(rule[i].p);
    });
    double area_term = 0.0;
    for (double v : vals) area_term += v;
    return {bdry - area_term, bdry};
}

LinFuncValue linfunc(const Polygon& poly, const ScalarField& A,
                     const SymplecticPotential& pot, int levels, int order) {
    return linfunc(
        poly, A, [&](Vec2 p) { return pot.value(p); },
        [&](std::size_t k, double t, Vec2) { return pot.boundary_value(k, t); }, levels,
        order);
}

KernelResiduals affine_kernel_check(const Polygon& poly, const ScalarField& A) {
    KernelResiduals out{};
    out.tolerance = 1e-10 * poly.boundary_volume();

    double b1 = 0.0;
    Vec2 bx{0, 0};
    for (const EdgeFrame& e : poly.edges()) {
        b1 += e.sigma * e.length;
        bx += e.midpoint() * (e.sigma * e.length); // exact: x is affine on the edge
    }

    double a1 = 0.0;
    Vec2 ax{0, 0};
    if (A.is_constant()) {
        const double Ac = *A.constant;
        a1 = Ac * poly.area();
        ax = poly.shape().centroid() * a1;
    } else {
        // quadrature path: widen the tolerance by a two-depth error estimate
        double c1 = 0.0;
        Vec2 cx{0, 0};
        for (const QPoint& q : interior_rule(poly, 10, 7, 6)) {
            const double w = q.w * A(q.p);
            a1 += w;
            ax += q.p * w;
        }
        for (const QPoint& q : interior_rule(poly, 8, 7, 5)) {
            const double w = q.w * A(q.p);
            c1 += w;
            cx += q.p * w;
        }
        const double est = std::max({std::abs(a1 - c1), std::abs(ax.x - cx.x),
                                     std::abs(ax.y - cx.y)});
        out.tolerance = std::max(out.tolerance, 3.0 * est);
    }
    out.on_one = b1 - a1;
    out.on_x = bx.x - ax.x;
    out.on_y = bx.y - ax.y;
    return out;
}

LambdaBound lambda_lower_bound(const Polygon& poly, const ScalarField& A,
                               const CreaseSweep& sweep) {
    const KernelResiduals kr = affine_kernel_check(poly, A);
    if (!kr.pass())
        throw input_error("affine kernel check failed; data inadmissible for a stability bound");

    const Vec2 base = poly.base_point();
    struct Cell {
        double ratio = -1.0;
        CreasedPL crease;
        bool destab = false;
        CreasedPL destab_crease;
        bool skipped = false;
    };
    const std::size_t total =
        static_cast<std::size_t>(sweep.directions) * static_cast<std::size_t>(sweep.offsets);
    std::vector<Cell> cells(total);

    // sweep offsets between the support line through the base point and the
    // far side of the polygon
    parallel_for(total, [&](std::size_t idx) {
        const int di = static_cast<int>(idx) / sweep.offsets;
        const int oi = static_cast<int>(idx) % sweep.offsets;
        const double theta = M_PI * di / sweep.directions; // creases come in +/- pairs
        for (int sign = 0; sign < 2; ++sign) {
            const double th = theta + sign * M_PI;
            const Vec2 a{std::cos(th), std::sin(th)};
            double smax = dot(a, poly.vertices()[0]);
            for (const Vec2& v : poly.vertices()) smax = std::max(smax, dot(a, v));
            const double s0 = dot(a, base);
            const double s = s0 + (smax - s0) * (oi + 1.0) / (sweep.offsets + 1.0);
            const CreasedPL f{a, -s};
            if (!f.admissible(base)) {
                cells[idx].skipped = true;
                continue;
            }
            const LinFuncValue lv = linfunc(poly, A, f);
            if (lv.boundary_integral <= 0.0) continue; // crease outside the polygon
            Cell& c = cells[idx];
            if (lv.L <= 0.0) {
                if (!c.destab) {
                    c.destab = true;
                    c.destab_crease = f;
                }
            } else {
                const double ratio = lv.boundary_integral / lv.L;
                if (ratio > c.ratio) {
                    c.ratio = ratio;
                    c.crease = f;
                }
            }
        }
    });

    LambdaBound out;
    for (const Cell& c : cells) {
        if (c.skipped) ++out.skipped;
        if (c.destab && !out.destabilizer) out.destabilizer = c.destab_crease;
        if (c.ratio > out.lambda_lb) {
            out.lambda_lb = c.ratio;
            out.argmax = c.crease;
        }
    }
    return out;
}

} // namespace abreu
