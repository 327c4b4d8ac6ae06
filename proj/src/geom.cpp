#include "abreu/geom.hpp"

#include <algorithm>
#include <limits>

namespace abreu {

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return pts;
    std::vector<Vec2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) { // lower
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) { // upper
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

bool ConvexPoly::strictly_convex(double tol) const {
    const std::size_t n = verts_.size();
    if (n < 3) return false;
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2 e0 = verts_[(k + 1) % n] - verts_[k];
        const Vec2 e1 = verts_[(k + 2) % n] - verts_[(k + 1) % n];
        if (cross(e0, e1) <= tol) return false;
    }
    return true;
}

double ConvexPoly::area() const {
    double s = 0.0;
    const std::size_t n = verts_.size();
    for (std::size_t k = 0; k < n; ++k) s += cross(verts_[k], verts_[(k + 1) % n]);
    return 0.5 * s;
}

Vec2 ConvexPoly::centroid() const {
    double s = 0.0;
    Vec2 c{0, 0};
    const std::size_t n = verts_.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2& a = verts_[k];
        const Vec2& b = verts_[(k + 1) % n];
        const double w = cross(a, b);
        s += w;
        c += (a + b) * w;
    }
    return c / (3.0 * s);
}

double ConvexPoly::diameter() const {
    double d2 = 0.0;
    for (std::size_t i = 0; i < verts_.size(); ++i)
        for (std::size_t j = i + 1; j < verts_.size(); ++j)
            d2 = std::max(d2, norm2(verts_[i] - verts_[j]));
    return std::sqrt(d2);
}

BBox ConvexPoly::bbox() const {
    BBox b{verts_[0], verts_[0]};
    for (const Vec2& v : verts_) {
        b.lo.x = std::min(b.lo.x, v.x);
        b.lo.y = std::min(b.lo.y, v.y);
        b.hi.x = std::max(b.hi.x, v.x);
        b.hi.y = std::max(b.hi.y, v.y);
    }
    return b;
}

double ConvexPoly::signed_boundary_distance(const Vec2& p) const {
    double d = std::numeric_limits<double>::infinity();
    const std::size_t n = verts_.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2 e = verts_[(k + 1) % n] - verts_[k];
        const Vec2 nin = perp(e) / norm(e); // inward for CCW order
        d = std::min(d, dot(nin, p - verts_[k]));
    }
    return d;
}

double ConvexPoly::ray_exit(const Vec2& origin, const Vec2& dir) const {
    double r = std::numeric_limits<double>::infinity();
    const std::size_t n = verts_.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2 e = verts_[(k + 1) % n] - verts_[k];
        const Vec2 nin = perp(e) / norm(e);
        const double speed = dot(nin, dir); // rate of approach to edge line
        if (speed < 0.0) {
            const double gap = dot(nin, origin - verts_[k]);
            r = std::min(r, gap / (-speed));
        }
    }
    return r;
}

ConvexPoly ConvexPoly::clip_halfplane(const Vec2& a, double c) const {
    std::vector<Vec2> out;
    const std::size_t n = verts_.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2& p = verts_[k];
        const Vec2& q = verts_[(k + 1) % n];
        const double fp = dot(a, p) + c;
        const double fq = dot(a, q) + c;
        if (fp >= 0.0) out.push_back(p);
        if ((fp > 0.0 && fq < 0.0) || (fp < 0.0 && fq > 0.0)) {
            const double t = fp / (fp - fq);
            out.push_back(p + (q - p) * t);
        }
    }
    return ConvexPoly(std::move(out));
}

} // namespace abreu
