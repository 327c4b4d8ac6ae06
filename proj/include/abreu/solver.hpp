#pragma once

#include "abreu/expr.hpp"
#include "abreu/potential.hpp"

#include <optional>
#include <vector>

namespace abreu {

struct SolveConfig {
    int degree = 6;
    int grid_n = 24;                 ///< collocation lattice per axis before clipping
    double collocation_clip = -1.0;  ///< default 1e-2 * diameter
    double tol_residual = 1e-8;      ///< RMS target
    int max_iter = 50;
    double backtrack = 0.5;
    double min_step = 1e-6;
    bool convexity_safeguard = true;
    bool track_functional = false;   ///< record the functional along accepted iterates
    std::optional<std::vector<double>> initial_coefficients;
};

struct SolveResult {
    SymplecticPotential potential; ///< normalised, affine part folded into the shift
    double residual_rms = 0.0;
    double residual_max = 0.0;
    int iterations = 0;
    double functional_value = 0.0;
    bool converged = false;
    std::vector<double> functional_trace; ///< filled when track_functional is set
};

/// Pointwise residuals S(u)(x_p) - A(x_p). A small deterministic subset is
/// cross-checked against the log-determinant route; disagreement beyond
/// 1e-6 throws.
std::vector<double> residual_vector(const SymplecticPotential& pot, const ScalarField& A,
                                    const std::vector<Vec2>& points);

/// Damped Gauss-Newton over the correction coefficients, starting from the
/// canonical potential (or the supplied coefficients). Throws solve_diverged
/// on failure; warns (returns normally) when A fails the affine-kernel check.
SolveResult solve(const Polygon& poly, const ScalarField& A, const SolveConfig& config = {});

/// The functional value as displayed in the reference convention:
/// -int log det(u_ij) + int A u - int_bdry u dsigma.
double functional_F(const SymplecticPotential& pot, const ScalarField& A,
                    int levels = 12, int order = 7);

/// The descent orientation -int log det(u_ij) + int_bdry u dsigma - int A u,
/// whose critical points in the boundary class solve the equation; it
/// differs from functional_F by twice the linear functional of u.
double functional_variational(const SymplecticPotential& pot, const ScalarField& A,
                              int levels = 12, int order = 7);

} // namespace abreu
