#pragma once

#include "abreu/expr.hpp"
#include "abreu/polytope.hpp"
#include "abreu/potential.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace abreu {

/// Single-crease piecewise-linear convex test function
/// f(x) = max(0, dot(a,x) + c). Admissible when it vanishes on a
/// neighbourhood of the base point, i.e. dot(a, base) + c < 0.
struct CreasedPL {
    Vec2 a;
    double c = 0.0;

    double operator()(const Vec2& p) const { return std::max(0.0, dot(a, p) + c); }
    bool admissible(const Vec2& base_point) const { return dot(a, base_point) + c < 0.0; }
};

struct LinFuncValue {
    double L;                 ///< int_bdry f dsigma - int f A
    double boundary_integral; ///< int_bdry f dsigma
};

/// Exact evaluation for a creased test function: closed-form boundary
/// pieces plus polygon clipping for the area term (constant A), or graded
/// quadrature over the clipped region for general A.
LinFuncValue linfunc(const Polygon& poly, const ScalarField& A, const CreasedPL& f);

/// Quadrature evaluation for a general integrand with a boundary trace.
/// interior(p) is integrated against A over the polygon; trace(k, t, p)
/// against sigma over the boundary.
LinFuncValue linfunc(const Polygon& poly, const ScalarField& A,
                     const std::function<double(Vec2)>& interior,
                     const std::function<double(std::size_t, double, Vec2)>& trace,
                     int levels = 12, int order = 7);

/// The linear functional applied to a potential (boundary trace by closed
/// extension).
LinFuncValue linfunc(const Polygon& poly, const ScalarField& A,
                     const SymplecticPotential& pot, int levels = 12, int order = 7);

struct KernelResiduals {
    double on_one, on_x, on_y;
    double tolerance; ///< 1e-10 * boundary volume
    bool pass() const {
        return std::abs(on_one) < tolerance && std::abs(on_x) < tolerance &&
               std::abs(on_y) < tolerance;
    }
};

/// Residuals of the functional on 1, x, y; exact for constant A.
KernelResiduals affine_kernel_check(const Polygon& poly, const ScalarField& A);

struct CreaseSweep {
    int directions = 180;
    int offsets = 100;
};

struct LambdaBound {
    double lambda_lb = 0.0;          ///< sup of boundary integral / L over the family
    CreasedPL argmax;                ///< crease attaining the bound
    std::optional<CreasedPL> destabilizer; ///< crease with L <= 0 but positive boundary mass
    int skipped = 0;                 ///< creases rejected by the base-point precondition
};

/// Lower bound for the stability constant over the single-crease family.
LambdaBound lambda_lower_bound(const Polygon& poly, const ScalarField& A,
                               const CreaseSweep& sweep = {});

} // namespace abreu
