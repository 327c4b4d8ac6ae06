#pragma once

#include "abreu/geom.hpp"
#include "abreu/polytope.hpp"

#include <functional>
#include <vector>

namespace abreu {

struct QPoint {
    Vec2 p;
    double w;
};

struct QPoint1 {
    double t; ///< abscissa in the cell's parameter
    double w;
};

/// Gauss-Legendre nodes/weights on [0,1].
const std::vector<QPoint1>& gauss01(int order);

/// Dyadic subdivision of [0,1] graded toward 0 (levels cells plus the
/// innermost cell [0, 2^-levels]).
std::vector<std::pair<double, double>> graded_cells_to_zero(int levels);

/// Composite rule on [0,1] graded toward both endpoints.
std::vector<QPoint1> graded_rule_both_ends(int levels, int order);

/// Arclength rule along edge k of the polygon, graded toward both
/// vertices. Weights sum to the edge length.
std::vector<QPoint> edge_rule(const Polygon& poly, std::size_t k, int levels = 12,
                              int order = 7);

/// Interior rule over the polygon: fan triangulation from the base point,
/// each fan cell graded toward its boundary edge and toward both corners.
/// Weights sum to the area.
std::vector<QPoint> interior_rule(const Polygon& poly, int levels = 12, int order = 7,
                                  int corner_levels = 8);

/// Same rule over a bare convex polygon, fanned from an interior center.
std::vector<QPoint> interior_rule(const ConvexPoly& shape, const Vec2& fan_center,
                                  int levels = 12, int order = 7, int corner_levels = 8);

/// Polar rule over a disc, graded in radius toward the center (for
/// integrands with an r^-1 singularity) and toward the rim.
std::vector<QPoint> disc_rule(const Vec2& center, double radius, int radial_levels = 10,
                              int order = 7, int angular_segments = 16);

/// Integral of f over the boundary against the measure sigma.
double boundary_integral(const Polygon& poly,
                         const std::function<double(std::size_t, double, Vec2)>& f,
                         int levels = 12, int order = 7);

/// Adaptive Simpson on [a,b]; tol is absolute.
double adaptive_segment(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 40);

} // namespace abreu
