#pragma once

#include "abreu/calculus.hpp"
#include "abreu/polytope.hpp"
#include "abreu/potential.hpp"

#include <vector>

namespace abreu {

/// Stream function of the divergence-free field w = v - (A/2)(x - origin):
/// grad H = (-w_2, w_1), normalised to H(base point) = 0, values obtained
/// by path integration along segments from the base point.
class ConjugateFunction {
public:
    ConjugateFunction(const SymplecticPotential& pot, double A, Vec2 origin,
                      double path_tol = 1e-10);

    Vec2 grad(const Vec2& p) const; ///< exact, no quadrature
    double operator()(const Vec2& p) const;
    double eval(const Vec2& p, double tol) const; ///< tighter path tolerance

    const Vec2& origin() const { return origin_; }
    double A() const { return A_; }
    const SymplecticPotential& potential() const { return pot_; }

private:
    const SymplecticPotential& pot_;
    double A_;
    Vec2 origin_;
    Vec2 base_;
    double path_tol_;
};

struct HamiltonianDiagnostics {
    double loop_closure_sup = 0.0;  ///< max circulation over random rectangles, per perimeter
    double qh_residual_sup = 0.0;   ///< sup |U^{ij} H_ij| by central differences
    double sup_grad_H = 0.0;
    double sup_w = 0.0;
    double sup_v = 0.0;
};

/// Field of H values on an interior grid plus its diagnostics.
struct HamiltonianField {
    std::vector<Vec2> points;
    std::vector<double> H;
    Vec2 origin;
    HamiltonianDiagnostics diag;
};

HamiltonianField hamiltonian(const SymplecticPotential& pot, double A, Vec2 origin,
                             int grid_n = 21, unsigned rng_seed = 2024);

/// Sup deviation between the extrapolated boundary values of H and the
/// piecewise-linear b, after the optimal constant shift.
struct BoundaryComparison {
    double sup_deviation = 0.0;
    double shift = 0.0; ///< the constant removed
    std::vector<double> vertex_H; ///< extrapolated H at the vertices
    int divergent = 0; ///< sample ladders that failed to contract
};
BoundaryComparison boundary_compare(const ConjugateFunction& H, const Polygon& poly,
                                    const BoundaryFunction& b);

/// Maximum slope of a plane through three vertex values of b; degenerate
/// (collinear) triples are skipped.
double three_point_K(const Polygon& poly, const BoundaryFunction& b);

struct VBoundReport {
    double sup_w = 0.0;
    double sup_v = 0.0;
    double K = 0.0;
    double v_bound = 0.0; ///< K + (A/2) max |x - origin|
    bool pass = false;
};
/// Checks sup |w| <= K and reports the induced bound on |v|.
VBoundReport v_bound_check(const SymplecticPotential& pot, double A, Vec2 origin, double K,
                           int grid_n = 21, double tol = 1e-6);

struct TransferReport {
    double max_lhs = 0.0;      ///< max |L(x)-L(y)|
    double worst_margin = 0.0; ///< min RHS - LHS over the pairs
    bool pass = true;
};
/// |L(x) - L(y)| <= K_v |grad u(x) - grad u(y)| over point pairs.
TransferReport l_transfer_check(const SymplecticPotential& pot, double K_v,
                                const std::vector<std::pair<Vec2, Vec2>>& pairs);

} // namespace abreu
