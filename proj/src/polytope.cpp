#include "abreu/polytope.hpp"

#include "abreu/errors.hpp"

#include <cmath>

namespace abreu {

namespace {

std::vector<EdgeFrame> build_edges(const ConvexPoly& shape, const std::vector<double>& sigma) {
    std::vector<EdgeFrame> edges;
    const std::size_t n = shape.size();
    edges.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        EdgeFrame e;
        e.a = shape.vertex(k);
        e.b = shape.vertex((k + 1) % n);
        const Vec2 tangent = e.b - e.a;
        e.length = norm(tangent);
        e.inward_normal = perp(tangent) / e.length;
        e.offset = dot(e.inward_normal, e.a);
        e.sigma = sigma[k];
        edges.push_back(e);
    }
    return edges;
}

} // namespace

Polygon::Polygon(std::vector<Vec2> vertices, std::vector<double> sigma, Vec2 base_point)
    : shape_(std::move(vertices)), sigma_(std::move(sigma)), base_(base_point) {
    if (shape_.size() < 3) throw input_error("polygon invariant 'vertex_count' failed: need at least 3 vertices");
    if (sigma_.size() != shape_.size())
        throw input_error("polygon invariant 'sigma_count' failed: one density per edge required");
    if (!shape_.strictly_convex(1e-10))
        throw input_error("polygon invariant 'strict_convexity' failed: vertices not in strictly convex CCW position");
    for (double s : sigma_)
        if (!(s > 0.0)) throw input_error("polygon invariant 'sigma_positive' failed: every edge density must be > 0");
    if (!(shape_.signed_boundary_distance(base_) > 0.0))
        throw input_error("polygon invariant 'base_point_interior' failed: base point must be strictly inside");

    edges_ = build_edges(shape_, sigma_);
    area_ = shape_.area();
    boundary_volume_ = 0.0;
    for (const EdgeFrame& e : edges_) boundary_volume_ += e.sigma * e.length;
}

double Polygon::boundary_distance(const Vec2& p) const {
    const double d = shape_.signed_boundary_distance(p);
    if (d < -1e-12 * diameter()) throw domain_error("point outside the polygon closure");
    return std::max(d, 0.0);
}

std::vector<EdgeFrame> defining_functions(const Polygon& poly) { return poly.edges(); }

Measures measures_and_A(const Polygon& poly) {
    return {poly.area(), poly.boundary_volume(), poly.A_const()};
}

BoundaryFunction boundary_from_densities(const Polygon& poly,
                                         const std::vector<double>& densities) {
    BoundaryFunction b;
    b.edge_density = densities;
    b.vertex_values.resize(poly.edge_count());
    double acc = 0.0;
    for (std::size_t k = 0; k < poly.edge_count(); ++k) {
        b.vertex_values[k] = acc;
        acc += densities[k] * poly.edge(k).length;
    }
    b.closure_error = acc;
    return b;
}

BoundaryFunction boundary_b(const Polygon& poly, double A, const Vec2& origin) {
    std::vector<double> densities(poly.edge_count());
    for (std::size_t k = 0; k < poly.edge_count(); ++k) {
        const EdgeFrame& e = poly.edge(k);
        // flux density of (A/2)(x - origin) through the edge; constant along it
        const double tau = 0.5 * A * dot(e.a - origin, e.outward_normal());
        densities[k] = e.sigma - tau;
    }
    BoundaryFunction b = boundary_from_densities(poly, densities);
    const double scale = poly.boundary_volume() > 0.0 ? poly.boundary_volume() : 1.0;
    if (std::abs(b.closure_error) > 1e-12 * scale)
        throw input_error("boundary function does not close: A inconsistent with the boundary measures");
    return b;
}

} // namespace abreu
