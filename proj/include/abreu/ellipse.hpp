#pragma once

#include "abreu/geom.hpp"

#include <vector>

namespace abreu {

/// Ellipse {x : (x-center)^T P (x-center) <= 1} with P symmetric positive
/// definite.
struct Ellipse {
    Vec2 center;
    Sym2 P;

    double area() const { return M_PI / std::sqrt(P.det()); }
    /// Semi-axes, descending, with the rotation taking the unit disc onto
    /// the ellipse shape. The first axis direction has nonnegative
    /// x-component.
    struct Axes {
        double a1, a2; ///< a1 >= a2
        Mat2 rotation; ///< columns are the axis directions
    };
    Axes axes() const;
    bool contains(const Vec2& p, double tol = 1e-9) const {
        const Vec2 d = p - center;
        return d.x * (P.xx * d.x + P.xy * d.y) + d.y * (P.xy * d.x + P.yy * d.y) <=
               1.0 + tol;
    }
};

/// Minimum-area enclosing ellipse by Khachiyan's barycentric iteration.
Ellipse min_enclosing_ellipse(const std::vector<Vec2>& points, double tol = 1e-9,
                              int max_iter = 100000);

} // namespace abreu
