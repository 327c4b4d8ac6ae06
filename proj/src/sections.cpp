#include "abreu/sections.hpp"

#include "abreu/errors.hpp"
#include "abreu/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace abreu {

double h_distance(const JetField& u, const Vec2& x, const Vec2& y) {
    const Jet4 jx = u.jet(x);
    return u.value(y) - jx.value - dot(jx.grad, y - x);
}

bool Section::convex_polyline(double tol) const {
    const std::size_t n = boundary.size();
    if (n < 3) return false;
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2 e0 = boundary[(k + 1) % n] - boundary[k];
        const Vec2 e1 = boundary[(k + 2) % n] - boundary[(k + 1) % n];
        if (cross(e0, e1) < -tol) return false;
    }
    return true;
}

Section section_boundary(const JetField& u, const Vec2& x, double t, int nrays,
                         double root_tol) {
    if (!(t > 0.0)) throw input_error("section level must be positive");
    Section sec;
    sec.center = x;
    sec.level = t;
    sec.boundary.resize(nrays);
    sec.radii.resize(nrays);

    const Jet4 jx = u.jet(x);
    std::vector<char> escaped(nrays, 0);
    parallel_for(static_cast<std::size_t>(nrays), [&](std::size_t i) {
        const double th = 2.0 * M_PI * double(i) / nrays;
        const Vec2 dir{std::cos(th), std::sin(th)};
        auto H = [&](double r) {
            const Vec2 y = x + dir * r;
            return u.value(y) - jx.value - dot(jx.grad, y - x);
        };
        const double r_exit = u.ray_exit(x, dir);
        double hi = r_exit * (1.0 - 1e-9);
        if (H(hi) <= t) { // level reached only at or past the domain edge
            escaped[i] = 1;
            return;
        }
        double lo = 0.0;
        // H is strictly increasing along the ray (convexity, minimum at x)
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double v = H(mid) - t;
            if (std::abs(v) < root_tol || hi - lo < 1e-15 * r_exit) {
                lo = hi = mid;
                break;
            }
            (v < 0.0 ? lo : hi) = mid;
        }
        const double r = 0.5 * (lo + hi);
        sec.radii[i] = r;
        sec.boundary[i] = x + dir * r;
    });
    for (char e : escaped)
        if (e) throw domain_error("section is not compactly contained in the domain");

    sec.volume = 0.0;
    for (int i = 0; i < nrays; ++i)
        sec.volume += 0.5 * cross(sec.boundary[i], sec.boundary[(i + 1) % nrays]);
    sec.compact = true;
    return sec;
}

double modulus(const JetField& u, const ConvexPoly& K, const ConvexPoly& Kplus, int grid_n,
               int boundary_samples) {
    for (const Vec2& v : K.vertices())
        if (Kplus.signed_boundary_distance(v) <= 0.0)
            throw input_error("modulus needs K compactly inside K+");

    std::vector<Vec2> bdry;
    bdry.reserve(boundary_samples);
    const std::size_t ne = Kplus.size();
    const int per_edge = std::max(1, boundary_samples / static_cast<int>(ne));
    for (std::size_t k = 0; k < ne; ++k) {
        const Vec2& a = Kplus.vertex(k);
        const Vec2& b = Kplus.vertex((k + 1) % ne);
        for (int j = 0; j < per_edge; ++j) bdry.push_back(a + (b - a) * (double(j) / per_edge));
    }

    std::vector<Vec2> centers;
    const BBox box = K.bbox();
    for (int i = 0; i < grid_n; ++i)
        for (int j = 0; j < grid_n; ++j) {
            const Vec2 p{box.lo.x + box.width() * (i + 1) / (grid_n + 1),
                         box.lo.y + box.height() * (j + 1) / (grid_n + 1)};
            if (K.contains(p)) centers.push_back(p);
        }
    for (const Vec2& v : K.vertices()) centers.push_back(v);

    std::vector<double> mins(centers.size());
    parallel_for(centers.size(), [&](std::size_t i) {
        const Jet4 jx = u.jet(centers[i]);
        double m = std::numeric_limits<double>::infinity();
        for (const Vec2& y : bdry)
            m = std::min(m, u.value(y) - jx.value - dot(jx.grad, y - centers[i]));
        mins[i] = m;
    });
    double out = std::numeric_limits<double>::infinity();
    for (double m : mins) out = std::min(out, m);
    return out;
}

NormalizationMap normalize_section(const Section& section) {
    const Ellipse e = min_enclosing_ellipse(section.boundary);
    const Ellipse::Axes ax = e.axes();
    if (ax.a2 < 1e-9 * ax.a1)
        throw domain_error("section too close to a segment to normalise");
    const double g = std::sqrt(ax.a1 * ax.a2);

    NormalizationMap map;
    map.t = section.level;
    map.center = e.center;
    map.T = ax.rotation * Mat2::diag(ax.a1 / g, ax.a2 / g);
    map.k = std::sqrt(section.level) / g;
    map.alpha_target = std::pow(2.0, -1.5);

    std::vector<Vec2> image(section.boundary.size());
    for (std::size_t i = 0; i < section.boundary.size(); ++i)
        image[i] = map.apply(section.boundary[i]);
    map.outer_radius = 0.0;
    for (const Vec2& p : image) map.outer_radius = std::max(map.outer_radius, norm(p));
    // distance from the origin to the image polyline
    map.inner_radius = std::numeric_limits<double>::infinity();
    const std::size_t n = image.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = image[i];
        const Vec2& b = image[(i + 1) % n];
        const Vec2 d = b - a;
        const double len2 = norm2(d);
        const double s = len2 > 0.0 ? std::clamp(-dot(a, d) / len2, 0.0, 1.0) : 0.0;
        map.inner_radius = std::min(map.inner_radius, norm(a + d * s));
    }
    return map;
}

SectionStats section_stats(const JetField& u, const Vec2& x, const std::vector<double>& levels,
                           int nrays) {
    SectionStats stats;
    for (double t : levels) {
        SectionStats::Row row;
        row.t = t;
        Section outer;
        try {
            outer = section_boundary(u, x, t, nrays);
        } catch (const domain_error&) {
            row.ok = false;
            row.note = "section not compact; level skipped";
            stats.rows.push_back(row);
            continue;
        }
        row.vol_over_t = outer.volume / t;
        const Section half = section_boundary(u, x, 0.5 * t, nrays);
        const NormalizationMap map = normalize_section(outer);

        std::vector<Vec2> outer_img(outer.boundary.size()), half_img(half.boundary.size());
        for (std::size_t i = 0; i < outer.boundary.size(); ++i)
            outer_img[i] = map.apply(outer.boundary[i]);
        for (std::size_t i = 0; i < half.boundary.size(); ++i)
            half_img[i] = map.apply(half.boundary[i]);

        auto dist_to_polyline = [](const Vec2& p, const std::vector<Vec2>& poly) {
            double d = std::numeric_limits<double>::infinity();
            const std::size_t n = poly.size();
            for (std::size_t i = 0; i < n; ++i) {
                const Vec2& a = poly[i];
                const Vec2 dseg = poly[(i + 1) % n] - a;
                const double len2 = norm2(dseg);
                const double s =
                    len2 > 0.0 ? std::clamp(dot(p - a, dseg) / len2, 0.0, 1.0) : 0.0;
                d = std::min(d, norm(p - (a + dseg * s)));
            }
            return d;
        };

        row.inner_gap = std::numeric_limits<double>::infinity();
        for (const Vec2& p : half_img)
            row.inner_gap = std::min(row.inner_gap, dist_to_polyline(p, outer_img));

        const Vec2 ximg = map.apply(x);
        row.inscribed_radius = std::numeric_limits<double>::infinity();
        for (const Vec2& p : half_img)
            row.inscribed_radius = std::min(row.inscribed_radius, norm(p - ximg));

        // quasi-triangle constant needs the doubled section to stay compact
        try {
            section_boundary(u, x, 2.0 * t, nrays);
            const int stride = std::max(1, nrays / 32);
            double worst = 0.0;
            std::vector<Vec2> samples;
            for (int i = 0; i < nrays; i += stride) samples.push_back(outer.boundary[i]);
            samples.push_back(x);
            for (const Vec2& y : samples) {
                const Jet4 jy = u.jet(y);
                for (const Vec2& z : samples)
                    worst = std::max(worst, u.value(z) - jy.value - dot(jy.grad, z - y));
            }
            row.quasi_triangle = worst / t;
        } catch (const domain_error&) {
            row.note = "doubled section not compact; quasi-triangle constant skipped";
        }
        stats.rows.push_back(row);
    }
    return stats;
}

} // namespace abreu
