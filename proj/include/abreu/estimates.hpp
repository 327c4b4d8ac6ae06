#pragma once

#include "abreu/calculus.hpp"
#include "abreu/expr.hpp"
#include "abreu/potential.hpp"
#include "abreu/sections.hpp"

#include <map>
#include <string>
#include <vector>

namespace abreu {

/// One verified inequality or identity: measured sides, margin and verdict.
struct CheckRecord {
    std::string id;
    std::string description;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool pass = true;
    bool report_only = false;
    std::map<std::string, double> meta; ///< sampling data, auxiliary constants

    static CheckRecord bound(std::string id, std::string desc, double lhs, double rhs) {
        CheckRecord r;
        r.id = std::move(id);
        r.description = std::move(desc);
        r.lhs = lhs;
        r.rhs = rhs;
        r.margin = rhs - lhs;
        r.pass = lhs <= rhs;
        return r;
    }
    static CheckRecord residual(std::string id, std::string desc, double value, double tol) {
        CheckRecord r = bound(std::move(id), std::move(desc), std::abs(value), tol);
        return r;
    }
    static CheckRecord report(std::string id, std::string desc, double value) {
        CheckRecord r;
        r.id = std::move(id);
        r.description = std::move(desc);
        r.lhs = value;
        r.report_only = true;
        return r;
    }
};

struct VerificationReport {
    std::vector<CheckRecord> checks;
    bool all_pass() const {
        for (const CheckRecord& c : checks)
            if (!c.report_only && !c.pass) return false;
        return true;
    }
    void add(CheckRecord c) { checks.push_back(std::move(c)); }
};

/// Explicit convex barrier on a half-cylinder: parameters of
/// r(x,y) = y^alpha ((b/2) x^2 - 1), convex when (2-b)/(2+b) > alpha.
struct BarrierSpec {
    double alpha = 0.5;
    double b = 0.2;
};

/// Lower bound on det(u_ij) at each point from the barrier comparison;
/// meta carries both orientations of the data constant.
CheckRecord barrier_lower_bound(const SymplecticPotential& pot, const ScalarField& A,
                                const std::vector<Vec2>& points, BarrierSpec spec = {});

/// Upper bound on det within a section: det^{1/2} <= (5/2 + aM/4) e C / (-u~)
/// with C from the least enclosing ellipse of the gradient image.
CheckRecord det_upper_in_section(const SymplecticPotential& pot, const ScalarField& A,
                                 const Vec2& x, double t, int nrays = 128);

/// Fitted limit of det * d along the inward normal of one face.
struct FaceAsymptotics {
    std::size_t face = 0;
    double limit = 0.0;
    double fit_residual = 0.0;
};
std::vector<FaceAsymptotics> boundary_asymptotics(const SymplecticPotential& pot,
                                                  double t_along_edge = 0.5,
                                                  double d0_factor = 0.05);

/// The exact mean-value identity on a disc: n Vol(D)(L(0) - Av L) = (I) + (II),
/// plus the derived bound on |L(0) - Av L|.
struct MeanValueIdentity {
    double lhs = 0.0;
    double I = 0.0;
    double II = 0.0;
    double rel_residual = 0.0;
    double bound_lhs = 0.0; ///< |L(0) - Av L|
    double bound_rhs = 0.0; ///< C int_bdry u~ dnu
};
MeanValueIdentity mean_value_identity(const SymplecticPotential& pot, const ScalarField& A,
                                      const Vec2& center, double radius,
                                      int radial_levels = 10, int order = 7,
                                      int angular_segments = 32);

/// Interior reports: the boundary integral of u (implied
/// stability constant), the decay of |grad u| d^2, and a linear fit of
/// L against |grad u|.
struct InteriorBounds {
    double boundary_integral = 0.0;
    double implied_lambda = 0.0; ///< boundary integral / n
    double sup_grad_d2 = 0.0;
    double fit_C0 = 0.0, fit_C1 = 0.0;
    double fit_max_violation = 0.0;
};
InteriorBounds interior_bounds_report(const SymplecticPotential& pot, int grid_n = 21);

/// Integral of |F|^2 - S^2 for each potential over the shared polygon;
/// identical for every member of the boundary class.
struct ChiValues {
    std::vector<double> values;
    double spread = 0.0;
    double error_estimate = 0.0; ///< coarse-vs-fine quadrature difference
    bool inconclusive = false;   ///< the spread sits below the quadrature noise
};
ChiValues chi_invariant(const std::vector<SymplecticPotential>& potentials, int levels = 14,
                        int order = 7);
double chi_of(const SymplecticPotential& pot, int levels = 14, int order = 7);

/// Hessian bound on a sublevel set D = {u < c} of the normalised potential:
/// lambda_max(u_ij) |u - c| <= K with K assembled from measured sups.
struct PogorelovReport {
    double c0, c1, c2, c3; ///< sup(-u~), sup|G|, sup|v|, sup|grad u~|
    double K = 0.0;
    double max_lhs = 0.0; ///< max lambda_max * |u~|
    bool pass = false;
};
PogorelovReport pogorelov_check(const SymplecticPotential& pot, double c, int nrays = 128,
                                int radial_samples = 12);

/// Report-only curvature diagnostics: the L2 energy of F on a disc, |G| at
/// its center, and the product Phi = |G| H_x over a compact region.
struct CurvatureReport {
    double energy = 0.0;        ///< int_disc |F|^2
    double G2_center = 0.0;     ///< |G(center)|^2
    double ratio = 0.0;         ///< |G|^2 / (E + E^3)
    double Phi_max = 0.0;
    Vec2 Phi_argmax;
};
CurvatureReport curvature_reports(const SymplecticPotential& pot, const Vec2& disc_center,
                                  double disc_radius, const ConvexPoly& K,
                                  int grid_n = 9, int boundary_samples = 128);

struct VerifyOptions {
    int grid_n = 21;
    std::vector<double> section_levels = {0.05, 0.1, 0.2};
    double disc_radius_factor = 0.4;  ///< mean-value disc radius as a fraction of d(base)
    double pogorelov_level_factor = 0.5; ///< c as a fraction of min boundary u
    unsigned rng_seed = 2024;
    bool with_conjugate = true; ///< constant A only
};

/// Full verification suite on one solution; deterministic given the inputs.
VerificationReport run_verification(const SymplecticPotential& pot, const ScalarField& A,
                                    const VerifyOptions& opts = {});

} // namespace abreu
