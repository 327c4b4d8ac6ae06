#include "abreu/conjugate.hpp"

#include "abreu/errors.hpp"
#include "abreu/parallel.hpp"
#include "abreu/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace abreu {

ConjugateFunction::ConjugateFunction(const SymplecticPotential& pot, double A, Vec2 origin,
                                     double path_tol)
    : pot_(pot), A_(A), origin_(origin), base_(pot.polygon().base_point()),
      path_tol_(path_tol) {}

Vec2 ConjugateFunction::grad(const Vec2& p) const {
    const PointState st = hessian_package(pot_.jet(p));
    const Vec2 w = st.v - (p - origin_) * (0.5 * A_);
    return {-w.y, w.x};
}

double ConjugateFunction::eval(const Vec2& p, double tol) const {
    const Vec2 d = p - base_;
    if (norm(d) == 0.0) return 0.0;
    // the polygon is star-shaped about any interior point, so the straight
    // segment stays inside
    return adaptive_segment([&](double s) { return dot(grad(base_ + d * s), d); }, 0.0, 1.0,
                            tol);
}

double ConjugateFunction::operator()(const Vec2& p) const { return eval(p, path_tol_); }

HamiltonianField hamiltonian(const SymplecticPotential& pot, double A, Vec2 origin,
                             int grid_n, unsigned rng_seed) {
    const Polygon& poly = pot.polygon();
    const ConjugateFunction H(pot, A, origin);

    HamiltonianField field;
    field.origin = origin;
    field.points = interior_grid(poly, grid_n, std::max(pot.d_min(), 0.05 * poly.diameter()));
    field.H.resize(field.points.size());
    parallel_for(field.points.size(), [&](std::size_t i) {
        field.H[i] = H(field.points[i]);
    });

    // sup norms of grad H, w, v over the grid
    for (const Vec2& p : field.points) {
        const PointState st = hessian_package(pot.jet(p));
        const Vec2 w = st.v - (p - origin) * (0.5 * A);
        field.diag.sup_w = std::max(field.diag.sup_w, norm(w));
        field.diag.sup_v = std::max(field.diag.sup_v, norm(st.v));
    }
    field.diag.sup_grad_H = field.diag.sup_w; // |grad H| = |w| pointwise

    // loop closure: circulation of grad H around random axis-aligned rectangles
    std::mt19937_64 rng(rng_seed);
    const BBox box = poly.shape().bbox();
    std::uniform_real_distribution<double> ux(box.lo.x, box.hi.x), uy(box.lo.y, box.hi.y);
    const double clear = std::max(pot.d_min(), 1e-3 * poly.diameter());
    int made = 0;
    while (made < 200) {
        Vec2 a{ux(rng), uy(rng)}, b{ux(rng), uy(rng)};
        const Vec2 lo{std::min(a.x, b.x), std::min(a.y, b.y)};
        const Vec2 hi{std::max(a.x, b.x), std::max(a.y, b.y)};
        if (hi.x - lo.x < 1e-3 || hi.y - lo.y < 1e-3) continue;
        const Vec2 corners[4] = {lo, {hi.x, lo.y}, hi, {lo.x, hi.y}};
        bool inside = true;
        for (const Vec2& c : corners)
            inside = inside && poly.shape().signed_boundary_distance(c) > clear;
        if (!inside) continue;
        ++made;
        double circ = 0.0;
        double perim = 0.0;
        for (int s = 0; s < 4; ++s) {
            const Vec2 p0 = corners[s], p1 = corners[(s + 1) % 4];
            const Vec2 d = p1 - p0;
            perim += norm(d);
            circ += adaptive_segment([&](double t) { return dot(H.grad(p0 + d * t), d); },
                                     0.0, 1.0, 1e-12);
        }
        field.diag.loop_closure_sup =
            std::max(field.diag.loop_closure_sup, std::abs(circ) / perim);
    }

    // Q(H) residual by second-order central differences of H (tight path
    // tolerance keeps the h^-2 noise amplification below the truncation term)
    const double h = 1e-3 * poly.diameter();
    const double fd_tol = 1e-13;
    std::vector<double> qh(field.points.size(), 0.0);
    parallel_for(field.points.size(), [&](std::size_t i) {
        const Vec2 p = field.points[i];
        if (poly.shape().signed_boundary_distance(p) < 3.0 * h) return;
        const double c0 = H.eval(p, fd_tol);
        const double xp = H.eval({p.x + h, p.y}, fd_tol), xm = H.eval({p.x - h, p.y}, fd_tol);
        const double yp = H.eval({p.x, p.y + h}, fd_tol), ym = H.eval({p.x, p.y - h}, fd_tol);
        const double pp = H.eval({p.x + h, p.y + h}, fd_tol),
                     pm = H.eval({p.x + h, p.y - h}, fd_tol),
                     mp = H.eval({p.x - h, p.y + h}, fd_tol),
                     mm = H.eval({p.x - h, p.y - h}, fd_tol);
        const double Hxx = (xp - 2 * c0 + xm) / (h * h);
        const double Hyy = (yp - 2 * c0 + ym) / (h * h);
        const double Hxy = (pp - pm - mp + mm) / (4 * h * h);
        const PointState st = hessian_package(pot.jet(p));
        qh[i] = std::abs(st.cofactor(0, 0) * Hxx + 2 * st.cofactor(0, 1) * Hxy +
                         st.cofactor(1, 1) * Hyy);
    });
    for (double q : qh) field.diag.qh_residual_sup = std::max(field.diag.qh_residual_sup, q);
    return field;
}

BoundaryComparison boundary_compare(const ConjugateFunction& H, const Polygon& poly,
                                    const BoundaryFunction& b) {
    // sample along inward normals at fixed fractions of each edge, three
    // dyadic distances, then extrapolate geometrically to the edge
    const double dists[3] = {1e-2, 5e-3, 2.5e-3};
    std::vector<double> deviations;
    std::vector<std::pair<double, double>> samples; // (H extrapolated, b value)

    BoundaryComparison out;
    const double scale = poly.diameter();
    for (std::size_t k = 0; k < poly.edge_count(); ++k) {
        const EdgeFrame& e = poly.edge(k);
        for (double t : {0.25, 0.5, 0.75}) {
            const Vec2 foot = e.point(t);
            double hv[3];
            for (int j = 0; j < 3; ++j)
                hv[j] = H.eval(foot + e.inward_normal * (dists[j] * scale), 1e-12);
            // H(d) ~ H0 + c d: one Richardson step on the dyadic ladder
            const double extrap = 2.0 * hv[2] - hv[1];
            if (std::abs(hv[2] - hv[1]) > std::abs(hv[1] - hv[0]) + 1e-12 * scale)
                ++out.divergent;
            samples.emplace_back(extrap, b.at(k, t, e.length));
        }
    }

    double mean = 0.0;
    for (auto [hv, bv] : samples) mean += hv - bv;
    mean /= samples.size();
    out.shift = mean;
    for (auto [hv, bv] : samples)
        out.sup_deviation = std::max(out.sup_deviation, std::abs(hv - bv - mean));

    // vertex extrapolation along the ray toward the base point
    const Vec2 base = poly.base_point();
    for (const Vec2& v : poly.vertices()) {
        const Vec2 dir = base - v;
        double hv[3];
        for (int j = 0; j < 3; ++j) hv[j] = H.eval(v + dir * (2.0 * dists[j]), 1e-12);
        out.vertex_H.push_back(2.0 * hv[2] - hv[1] - mean);
    }
    return out;
}

double three_point_K(const Polygon& poly, const BoundaryFunction& b) {
    const std::vector<Vec2>& vs = poly.vertices();
    const std::size_t n = vs.size();
    double K = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                const double det = cross(vs[j] - vs[i], vs[k] - vs[i]);
                if (std::abs(det) < 1e-12) continue;
                const double bi = b.vertex_values[i], bj = b.vertex_values[j],
                             bk = b.vertex_values[k];
                // gradient of the affine function through the three values
                const Vec2 g{((bj - bi) * (vs[k].y - vs[i].y) -
                              (bk - bi) * (vs[j].y - vs[i].y)) /
                                 det,
                             ((bk - bi) * (vs[j].x - vs[i].x) -
                              (bj - bi) * (vs[k].x - vs[i].x)) /
                                 det};
                K = std::max(K, norm(g));
            }
    return K;
}

VBoundReport v_bound_check(const SymplecticPotential& pot, double A, Vec2 origin, double K,
                           int grid_n, double tol) {
    VBoundReport out;
    out.K = K;
    const Polygon& poly = pot.polygon();
    double max_r = 0.0;
    for (const Vec2& v : poly.vertices()) max_r = std::max(max_r, norm(v - origin));
    out.v_bound = K + 0.5 * std::abs(A) * max_r;
    for (const Vec2& p : interior_grid(poly, grid_n, pot.d_min())) {
        const PointState st = hessian_package(pot.jet(p));
        const Vec2 w = st.v - (p - origin) * (0.5 * A);
        out.sup_w = std::max(out.sup_w, norm(w));
        out.sup_v = std::max(out.sup_v, norm(st.v));
    }
    out.pass = out.sup_w <= K + tol && out.sup_v <= out.v_bound + tol;
    return out;
}

TransferReport l_transfer_check(const SymplecticPotential& pot, double K_v,
                                const std::vector<std::pair<Vec2, Vec2>>& pairs) {
    TransferReport out;
    out.worst_margin = std::numeric_limits<double>::infinity();
    for (const auto& [x, y] : pairs) {
        const Jet4 jx = pot.jet(x), jy = pot.jet(y);
        const double lhs = std::abs(std::log(jx.hess.det()) - std::log(jy.hess.det()));
        const double rhs = K_v * norm(jx.grad - jy.grad);
        out.max_lhs = std::max(out.max_lhs, lhs);
        out.worst_margin = std::min(out.worst_margin, rhs - lhs);
        if (lhs > rhs + 1e-9) out.pass = false;
    }
    return out;
}

} // namespace abreu
