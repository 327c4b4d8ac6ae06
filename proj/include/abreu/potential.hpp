#pragma once

#include "abreu/geom.hpp"
#include "abreu/jets.hpp"
#include "abreu/polytope.hpp"

#include <functional>
#include <vector>

namespace abreu {

/// Tensor-product Bernstein polynomial of degree m in each variable on a
/// bounding box. Coefficients are immutable; derivative difference tables
/// through order 4 are precomputed at construction.
class BernsteinPoly {
public:
    BernsteinPoly() = default;
    BernsteinPoly(int degree, const BBox& box, std::vector<double> coeffs);

    int degree() const { return m_; }
    const BBox& box() const { return box_; }
    const std::vector<double>& coefficients() const { return coeffs_; }
    static std::size_t coefficient_count(int degree) {
        return static_cast<std::size_t>(degree + 1) * static_cast<std::size_t>(degree + 1);
    }

    double value(const Vec2& p) const;
    /// Mixed partial of x-order px and y-order py (px + py <= 4).
    double derivative(const Vec2& p, int px, int py) const;
    Jet4 jet(const Vec2& p) const;

private:
    int m_ = 0;
    BBox box_{};
    std::vector<double> coeffs_;
    // diff_[px][py]: scaled forward-difference table of size (m+1-px)x(m+1-py)
    std::vector<double> diff_[5][5];
};

/// Least-squares Bernstein coefficients of a smooth function, sampled on a
/// uniform lattice over the box. Exact (up to conditioning) when f lies in
/// the degree-m tensor space.
std::vector<double> bernstein_fit(int degree, const BBox& box,
                                  const std::function<double(Vec2)>& f);

/// Affine term c + dot(g, x) appended after evaluation; carries the
/// normalisation.
struct AffineShift {
    double c = 0.0;
    Vec2 g{};
};

/// u = u0 + f: the canonical log-singular part built from the adapted
/// defining functions, plus a Bernstein correction and an affine shift.
/// Immutable; jet evaluation is pure and thread-safe.
class SymplecticPotential : public JetField {
public:

    /// Canonical potential: f = 0.
    static SymplecticPotential canonical(const Polygon& poly, int degree = 0);

    /// Canonical part plus a correction with the given coefficients.
    static SymplecticPotential with_correction(const Polygon& poly, int degree,
                                               std::vector<double> coeffs,
                                               AffineShift shift = AffineShift{});

    /// Test hook: pure polynomial potential (no log part) on the polygon's
    /// box; used to exercise calculus against closed forms.
    static SymplecticPotential polynomial_only(const Polygon& poly, int degree,
                                               std::vector<double> coeffs);

    const Polygon& polygon() const { return poly_; }
    int correction_degree() const { return correction_.degree(); }
    const std::vector<double>& coefficients() const { return correction_.coefficients(); }
    const AffineShift& affine_shift() const { return shift_; }
    bool has_log_part() const { return with_log_; }

    /// Default clearance for interior sampling grids.
    double d_min() const { return 1e-3 * poly_.diameter(); }

    /// Exact analytic 4-jet; throws domain_error on or outside the boundary.
    Jet4 jet(const Vec2& p) const override;
    double value(const Vec2& p) const override; ///< continuous up to the closure
    double ray_exit(const Vec2& p, const Vec2& dir) const override {
        return poly_.shape().ray_exit(p, dir);
    }

    Vec2 gradient(const Vec2& p) const;

    /// Value of the boundary extension at parameter t along edge k.
    double boundary_value(std::size_t k, double t) const;

    /// Returns a copy normalised at the base point: u = 0 and grad u = 0 there.
    SymplecticPotential normalized() const;

    /// Moves the affine component of the correction coefficients into the
    /// affine shift; the represented function is unchanged.
    SymplecticPotential affine_canonicalized() const;

    /// Copy with different coefficients (same polygon/degree).
    SymplecticPotential with_coefficients(std::vector<double> coeffs) const;

private:
    SymplecticPotential(const Polygon& poly, BernsteinPoly corr, AffineShift shift,
                        bool with_log)
        : poly_(poly), correction_(std::move(corr)), shift_(shift), with_log_(with_log) {}

    Polygon poly_;
    BernsteinPoly correction_;
    AffineShift shift_;
    bool with_log_ = true;
};

/// Gradient map x -> grad u(x); injective on the interior.
Vec2 legendre_map(const SymplecticPotential& pot, const Vec2& p);

/// Newton inversion of the gradient map. Throws domain_error if the
/// iteration leaves the interior.
Vec2 legendre_inverse(const SymplecticPotential& pot, const Vec2& xi, Vec2 start);

/// Interior sampling grid: n x n lattice at interior fractions of the
/// bounding box, filtered to boundary clearance >= d_min.
std::vector<Vec2> interior_grid(const Polygon& poly, int n, double d_min);

struct ConvexityAudit {
    double min_eigenvalue;
    Vec2 argmin;
    std::vector<Vec2> failures; ///< points with a non-PD Hessian
    bool convex() const { return failures.empty() && min_eigenvalue > 0.0; }
};

/// Minimum Hessian eigenvalue over an interior grid.
ConvexityAudit convexity_audit(const SymplecticPotential& pot, int grid_n = 21,
                               double d_min = -1.0);

} // namespace abreu
