#pragma once

#include "abreu/estimates.hpp"
#include "abreu/expr.hpp"
#include "abreu/polytope.hpp"
#include "abreu/potential.hpp"
#include "abreu/solver.hpp"

#include <string>

namespace abreu {

/// {"vertices": [[x,y],...] CCW, "sigma": [...], "base_point": [x,y]}
Polygon load_polygon(const std::string& path);
void save_polygon(const Polygon& poly, const std::string& path);

/// Solution file: polygon inline, correction degree and coefficients,
/// affine shift, solver metadata (A, residuals, iterations, functional).
struct SolutionFile {
    SymplecticPotential potential;
    ScalarField A;
    double residual_rms = 0.0;
    double residual_max = 0.0;
    int iterations = 0;
    double functional_value = 0.0;
    bool converged = false;
};
SolutionFile load_solution(const std::string& path);
void save_solution(const SolutionFile& sol, const std::string& path);

void save_report(const VerificationReport& report, const std::string& path);

/// Field grid CSV: columns x, y, d, u, ux, uy, uxx, uxy, uyy, detH, L, S,
/// v1, v2, normF2, normG2; rows lexicographic in (x, y), 12 significant
/// digits. Throws input_error for n < 1.
void emit_grid_csv(const SymplecticPotential& pot, int n, const std::string& path);

/// Writes via a temp file in the same directory plus rename.
void atomic_write(const std::string& path, const std::string& content);

} // namespace abreu
