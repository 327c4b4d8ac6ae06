#pragma once

#include "abreu/geom.hpp"

#include <string>
#include <vector>

namespace abreu {

/// One face of the polygon with its adapted defining function
/// l_k(x) = (dot(n,x) - offset) / sigma: affine, zero on the edge,
/// positive inside, with Euclidean normal derivative 1/sigma across it.
struct EdgeFrame {
    Vec2 a;               ///< first endpoint (vertex k)
    Vec2 b;               ///< second endpoint (vertex k+1)
    Vec2 inward_normal;   ///< unit
    double offset = 0.0;  ///< dot(inward_normal, x) == offset on the edge
    double sigma = 1.0;   ///< boundary measure density per unit length
    double length = 0.0;

    double ell(const Vec2& p) const { return (dot(inward_normal, p) - offset) / sigma; }
    Vec2 ell_grad() const { return inward_normal / sigma; }
    Vec2 outward_normal() const { return -inward_normal; }
    Vec2 point(double t) const { return a + (b - a) * t; } ///< t in [0,1]
    Vec2 midpoint() const { return point(0.5); }
};

/// Convex 2-D polytope with a per-edge boundary measure density and an
/// interior base point. Immutable after construction.
class Polygon {
public:
    /// Validates all invariants; throws input_error naming the failing one.
    Polygon(std::vector<Vec2> vertices, std::vector<double> sigma, Vec2 base_point);

    const ConvexPoly& shape() const { return shape_; }
    const std::vector<Vec2>& vertices() const { return shape_.vertices(); }
    const std::vector<double>& sigma() const { return sigma_; }
    const Vec2& base_point() const { return base_; }
    std::size_t edge_count() const { return edges_.size(); }
    const EdgeFrame& edge(std::size_t k) const { return edges_[k]; }
    const std::vector<EdgeFrame>& edges() const { return edges_; }

    double area() const { return area_; }
    double boundary_volume() const { return boundary_volume_; } ///< sum sigma_k len_k
    double A_const() const { return boundary_volume_ / area_; }
    double diameter() const { return shape_.diameter(); }

    /// Distance to the boundary; throws domain_error outside the closure.
    double boundary_distance(const Vec2& p) const;

    /// Strict interior test with clearance d.
    bool interior(const Vec2& p, double d = 0.0) const {
        return shape_.signed_boundary_distance(p) > d;
    }

private:
    ConvexPoly shape_;
    std::vector<double> sigma_;
    Vec2 base_;
    std::vector<EdgeFrame> edges_;
    double area_ = 0.0;
    double boundary_volume_ = 0.0;
};

/// Builds the adapted defining functions of every face.
std::vector<EdgeFrame> defining_functions(const Polygon& poly);

/// (area, boundary volume, A): A is the constant forced by requiring the
/// linear functional to vanish on constants.
struct Measures {
    double area;
    double boundary_volume;
    double A_const;
};
Measures measures_and_A(const Polygon& poly);

/// Piecewise-linear function on the boundary with db = sigma - tau, where
/// tau is the flux density of the radial field (A/2)(x - origin).
/// Normalised to zero at vertex 0.
struct BoundaryFunction {
    std::vector<double> vertex_values;   ///< value at vertex k (size = edge count)
    std::vector<double> edge_density;    ///< sigma_k - tau_k on edge k
    double closure_error = 0.0;          ///< signed defect accumulated around the loop

    /// Value at parameter t in [0,1] along edge k.
    double at(std::size_t k, double t, double edge_length) const {
        return vertex_values[k] + edge_density[k] * edge_length * t;
    }
};

/// Throws input_error if the loop does not close (A inconsistent with the
/// measures of poly).
BoundaryFunction boundary_b(const Polygon& poly, double A, const Vec2& origin);

/// Same construction from explicit per-edge densities (no closure check);
/// used by degenerate test data.
BoundaryFunction boundary_from_densities(const Polygon& poly,
                                         const std::vector<double>& densities);

} // namespace abreu
