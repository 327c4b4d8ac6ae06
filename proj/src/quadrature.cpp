#include "abreu/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace abreu {

namespace {

std::vector<QPoint1> compute_gauss01(int n) {
    // Newton iteration on Legendre polynomials, nodes mapped to [0,1]
    std::vector<QPoint1> out(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p0 = 0, p1 = 0;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        p0 = 1.0;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        out[n - 1 - i].t = 0.5 * (x + 1.0);
        out[n - 1 - i].w = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return out;
}

} // namespace

const std::vector<QPoint1>& gauss01(int order) {
    static std::map<int, std::vector<QPoint1>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_gauss01(order)).first;
    return it->second;
}

std::vector<std::pair<double, double>> graded_cells_to_zero(int levels) {
    std::vector<std::pair<double, double>> cells;
    cells.reserve(levels + 1);
    double hi = std::ldexp(1.0, -levels);
    cells.emplace_back(0.0, hi);
    for (int j = 0; j < levels; ++j) {
        cells.emplace_back(hi, 2.0 * hi);
        hi *= 2.0;
    }
    return cells;
}

std::vector<QPoint1> graded_rule_both_ends(int levels, int order) {
    const auto& g = gauss01(order);
    std::vector<QPoint1> out;
    auto half = graded_cells_to_zero(levels); // cells of [0,1], scaled to [0,1/2]
    for (auto [a, b] : half)
        for (const QPoint1& q : g)
            out.push_back({0.5 * (a + (b - a) * q.t), 0.5 * (b - a) * q.w});
    const std::size_t nhalf = out.size();
    for (std::size_t i = 0; i < nhalf; ++i)
        out.push_back({1.0 - out[nhalf - 1 - i].t, out[nhalf - 1 - i].w});
    return out;
}

std::vector<QPoint> edge_rule(const Polygon& poly, std::size_t k, int levels, int order) {
    const EdgeFrame& e = poly.edge(k);
    std::vector<QPoint> out;
    for (const QPoint1& q : graded_rule_both_ends(levels, order))
        out.push_back({e.point(q.t), q.w * e.length});
    return out;
}

std::vector<QPoint> interior_rule(const ConvexPoly& shape, const Vec2& fan_center,
                                  int levels, int order, int corner_levels) {
    const Vec2 p0 = fan_center;
    const auto& g = gauss01(order);
    const auto scells = graded_cells_to_zero(levels); // apex distance 1-s, cells toward s=1
    const auto trule = graded_rule_both_ends(corner_levels, order);

    std::vector<QPoint> out;
    const std::size_t n = shape.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2& va = shape.vertex(k);
        const Vec2& vb = shape.vertex((k + 1) % n);
        const double two_area = cross(va - p0, vb - p0);
        if (two_area <= 0.0) continue; // degenerate sliver after clipping
        // map (s,t) -> p0 + s((1-t)a + t b - p0); area element = s*two_area ds dt
        for (auto [c0, c1] : scells) {
            const double a = 1.0 - c1, b = 1.0 - c0; // s-interval graded toward s=1
            for (const QPoint1& qs : g) {
                const double s = a + (b - a) * qs.t;
                const double ws = (b - a) * qs.w;
                for (const QPoint1& qt : trule) {
                    const Vec2 edge_pt = va + (vb - va) * qt.t;
                    out.push_back({p0 + (edge_pt - p0) * s, s * two_area * ws * qt.w});
                }
            }
        }
    }
    return out;
}

std::vector<QPoint> interior_rule(const Polygon& poly, int levels, int order,
                                  int corner_levels) {
    return interior_rule(poly.shape(), poly.base_point(), levels, order, corner_levels);
}

std::vector<QPoint> disc_rule(const Vec2& center, double radius, int radial_levels,
                              int order, int angular_segments) {
    const auto& g = gauss01(order);
    std::vector<QPoint> out;
    for (auto [a, b] : graded_cells_to_zero(radial_levels))
        for (const QPoint1& qr : g) {
            const double r = (a + (b - a) * qr.t) * radius;
            const double wr = (b - a) * qr.w * radius;
            for (int s = 0; s < angular_segments; ++s)
                for (const QPoint1& qt : g) {
                    const double th = 2.0 * M_PI * (s + qt.t) / angular_segments;
                    const double wt = 2.0 * M_PI * qt.w / angular_segments;
                    out.push_back({{center.x + r * std::cos(th), center.y + r * std::sin(th)},
                                   r * wr * wt});
                }
        }
    return out;
}

double boundary_integral(const Polygon& poly,
                         const std::function<double(std::size_t, double, Vec2)>& f,
                         int levels, int order) {
    double acc = 0.0;
    for (std::size_t k = 0; k < poly.edge_count(); ++k) {
        const EdgeFrame& e = poly.edge(k);
        double s = 0.0;
        for (const QPoint1& q : graded_rule_both_ends(levels, order))
            s += q.w * f(k, q.t, e.point(q.t));
        acc += s * e.length * e.sigma;
    }
    return acc;
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa, double m,
               double fm, double b, double fb, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
           simpson(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

} // namespace

double adaptive_segment(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(f, a, fa, m, fm, b, fb, whole, tol, max_depth);
}

} // namespace abreu
