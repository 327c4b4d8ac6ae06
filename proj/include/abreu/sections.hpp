#pragma once

#include "abreu/calculus.hpp"
#include "abreu/ellipse.hpp"
#include "abreu/jets.hpp"
#include "abreu/potential.hpp"

#include <optional>
#include <string>
#include <vector>

namespace abreu {

/// Centered second-order distance H_x(y) = u(y) - u(x) - <grad u(x), y-x>.
/// Nonnegative, zero only at y = x.
double h_distance(const JetField& u, const Vec2& x, const Vec2& y);

/// Sub-level set S_x(t) = {H_x <= t}, traced by per-ray root finding.
struct Section {
    Vec2 center;
    double level = 0.0;
    std::vector<Vec2> boundary;  ///< one point per ray, counterclockwise
    std::vector<double> radii;   ///< per-ray boundary distance from the center
    double volume = 0.0;         ///< shoelace area of the polyline
    bool compact = true;         ///< strictly inside the evaluation domain

    bool convex_polyline(double tol = 1e-9) const;
};

/// Throws domain_error when the section escapes the domain (the level is
/// reached only past the boundary).
Section section_boundary(const JetField& u, const Vec2& x, double t, int nrays = 128,
                         double root_tol = 1e-10);

/// Modulus of convexity H(K, K+) = min over x in K of min over boundary of
/// K+ of H_x. K and K+ are sampled with the given resolutions.
double modulus(const JetField& u, const ConvexPoly& K, const ConvexPoly& Kplus,
               int grid_n = 9, int boundary_samples = 128);

/// Unimodular normalisation of a section: phi(y) = k t^{-1/2} T^{-1}(y - center)
/// maps the section into the unit disc, with T built from the minimum-area
/// enclosing ellipse of the boundary polyline.
struct NormalizationMap {
    Mat2 T;        ///< unimodular
    double k = 0;  ///< scale
    Vec2 center;   ///< ellipse center, removed before mapping
    double t = 0;  ///< section level
    double inner_radius = 0;  ///< achieved: largest centered disc inside the image
    double outer_radius = 0;  ///< max |phi(boundary)| (must be <= 1)
    double alpha_target = 0;  ///< the n^{-3/2} convention for comparison

    Vec2 apply(const Vec2& y) const {
        return T.inverse().apply(y - center) * (k / std::sqrt(t));
    }
};
NormalizationMap normalize_section(const Section& section);

/// View of u*(x) = u(sqrt(t) T x) / t as a jet field on the mapped domain.
class RescaledPotential : public JetField {
public:
    RescaledPotential(const JetField& base, double t, const Mat2& T)
        : base_(base), t_(t), T_(T), S_(T.inverse()), rt_(std::sqrt(t)) {}

    Vec2 map_to_base(const Vec2& p) const { return T_.apply(p) * rt_; }
    Vec2 map_from_base(const Vec2& q) const { return S_.apply(q) / rt_; }

    Jet4 jet(const Vec2& p) const override {
        return rescale_jet(base_.jet(map_to_base(p)), t_, T_, p);
    }
    double value(const Vec2& p) const override { return base_.value(map_to_base(p)) / t_; }
    double ray_exit(const Vec2& p, const Vec2& dir) const override {
        return base_.ray_exit(map_to_base(p), T_.apply(dir) * rt_);
    }

private:
    const JetField& base_;
    double t_;
    Mat2 T_;
    Mat2 S_;
    double rt_;
};

/// Per-level empirical constants of the section machinery; reported, never
/// asserted against literature values.
struct SectionStats {
    struct Row {
        double t = 0;
        double vol_over_t = 0;        ///< Vol(S_x(t)) / t
        double inner_gap = 0;         ///< dist of S_x(t/2) to the boundary of S_x(t), normalised
        double quasi_triangle = 0;    ///< max H_y(z)/t over sampled y,z in S_x(t)
        double inscribed_radius = 0;  ///< centered ball inside normalised S_x(t/2)
        bool ok = true;
        std::string note;
    };
    std::vector<Row> rows;
};
SectionStats section_stats(const JetField& u, const Vec2& x, const std::vector<double>& levels,
                           int nrays = 128);

} // namespace abreu
