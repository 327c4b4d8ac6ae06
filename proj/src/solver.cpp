#include "abreu/solver.hpp"

#include "abreu/calculus.hpp"
#include "abreu/errors.hpp"
#include "abreu/parallel.hpp"
#include "abreu/quadrature.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <iostream>

namespace abreu {

std::vector<double> residual_vector(const SymplecticPotential& pot, const ScalarField& A,
                                    const std::vector<Vec2>& points) {
    std::vector<double> r(points.size());
    std::vector<double> cross_dev(points.size(), 0.0);
    parallel_for(points.size(), [&](std::size_t i) {
        const PointState st = hessian_package(pot.jet(points[i]));
        r[i] = st.S - A(points[i]);
        if (i % 100 == 0) { // cross-check the evaluation route on a sparse subset
            const SForms f = abreu_S_forms(st);
            cross_dev[i] = f.max_dev / std::max(1.0, std::abs(st.S));
        }
    });
    for (std::size_t i = 0; i < points.size(); i += 100)
        if (cross_dev[i] > 1e-6)
            throw domain_error("residual route cross-check failed: S forms disagree");
    return r;
}

namespace {

double rms(const std::vector<double>& r) {
    double s = 0.0;
    for (double x : r) s += x * x;
    return std::sqrt(s / std::max<std::size_t>(1, r.size()));
}

double max_abs(const std::vector<double>& r) {
    double s = 0.0;
    for (double x : r) s = std::max(s, std::abs(x));
    return s;
}

bool hessian_pd_everywhere(const SymplecticPotential& pot, const std::vector<Vec2>& pts) {
    std::vector<char> ok(pts.size(), 1);
    parallel_for(pts.size(), [&](std::size_t i) {
        try {
            ok[i] = pot.jet(pts[i]).hess.positive_definite() ? 1 : 0;
        } catch (const domain_error&) {
            ok[i] = 0;
        }
    });
    for (char c : ok)
        if (!c) return false;
    return true;
}

} // namespace

SolveResult solve(const Polygon& poly, const ScalarField& A, const SolveConfig& config) {
    const double clip = config.collocation_clip > 0.0 ? config.collocation_clip
                                                      : 1e-2 * poly.diameter();
    const std::vector<Vec2> points = interior_grid(poly, config.grid_n, clip);
    const std::size_t ncoef = BernsteinPoly::coefficient_count(config.degree);
    if (points.size() < ncoef)
        throw input_error("collocation grid smaller than the coefficient count");

    {
        // Accept the data as-is, but warn when the functional fails to kill
        // constants: no solution can exist then and the iteration will stall.
        double vol_term = 0.0;
        if (A.is_constant()) {
            vol_term = *A.constant * poly.area();
        } else {
            for (const QPoint& q : interior_rule(poly, 8, 5, 4)) vol_term += q.w * A(q.p);
        }
        const double defect = poly.boundary_volume() - vol_term;
        if (std::abs(defect) > 1e-9 * poly.boundary_volume())
            std::cerr << "warning: A is inconsistent with the boundary measures "
                         "(defect "
                      << defect << "); solutions may not exist\n";
    }

    std::vector<double> coeffs =
        config.initial_coefficients.value_or(std::vector<double>(ncoef, 0.0));
    if (coeffs.size() != ncoef) throw input_error("initial coefficient count mismatch");

    SymplecticPotential pot = SymplecticPotential::with_correction(poly, config.degree, coeffs);
    std::vector<double> r = residual_vector(pot, A, points);
    double err = rms(r);

    SolveResult out{pot, 0.0, 0.0, 0, 0.0, false, {}};
    if (config.track_functional) out.functional_trace.push_back(functional_F(pot, A));

    auto done = [&] {
        return err < config.tol_residual && max_abs(r) < 10.0 * config.tol_residual;
    };
    int it = 0;
    for (; it < config.max_iter && !done(); ++it) {
        // Jacobian by forward differences in the coefficients
        Eigen::MatrixXd J(points.size(), ncoef);
        std::vector<std::vector<double>> cols(ncoef);
        parallel_for(ncoef, [&](std::size_t j) {
            const double h = 1e-7 * std::max(1.0, std::abs(coeffs[j]));
            std::vector<double> cj = coeffs;
            cj[j] += h;
            const SymplecticPotential pj = pot.with_coefficients(std::move(cj));
            std::vector<double> rj(points.size());
            for (std::size_t i = 0; i < points.size(); ++i) {
                const PointState st = hessian_package(pj.jet(points[i]));
                rj[i] = (st.S - A(points[i]) - r[i]) / h;
            }
            cols[j] = std::move(rj);
        });
        for (std::size_t j = 0; j < ncoef; ++j)
            for (std::size_t i = 0; i < points.size(); ++i) J(i, j) = cols[j][i];

        Eigen::Map<const Eigen::VectorXd> rv(r.data(), r.size());
        Eigen::MatrixXd JtJ = J.transpose() * J;
        JtJ.diagonal().array() += 1e-12; // Tikhonov floor
        const Eigen::VectorXd step = JtJ.ldlt().solve(-J.transpose() * rv);

        // backtracking line search; every accepted step keeps the Hessian PD
        double lambda = 1.0;
        bool accepted = false;
        while (lambda >= config.min_step) {
            std::vector<double> trial = coeffs;
            for (std::size_t j = 0; j < ncoef; ++j) trial[j] += lambda * step(j);
            SymplecticPotential cand = pot.with_coefficients(trial);
            if (!config.convexity_safeguard || hessian_pd_everywhere(cand, points)) {
                try {
                    std::vector<double> rc = residual_vector(cand, A, points);
                    const double ec = rms(rc);
                    if (ec < err) {
                        coeffs = std::move(trial);
                        pot = std::move(cand);
                        r = std::move(rc);
                        err = ec;
                        accepted = true;
                        break;
                    }
                } catch (const domain_error&) {
                    // fell out of the convex cone mid-evaluation; shrink
                }
            }
            lambda *= config.backtrack;
        }
        if (!accepted)
            throw solve_diverged("line search stalled before reaching tolerance", err);
        if (config.track_functional) out.functional_trace.push_back(functional_F(pot, A));
    }

    if (!done()) throw solve_diverged("no convergence after max_iter iterations", err);
    if (config.convexity_safeguard && !convexity_audit(pot).convex())
        throw solve_diverged("converged iterate fails the convexity audit", err);

    out.potential = pot.affine_canonicalized().normalized();
    out.residual_rms = err;
    out.residual_max = max_abs(r);
    out.iterations = it;
    out.converged = true;
    out.functional_value = functional_F(out.potential, A);
    if (config.track_functional) out.functional_trace.push_back(out.functional_value);
    return out;
}

namespace {

// shared pieces: returns (-int log det, int A u, int_bdry u dsigma)
std::array<double, 3> functional_pieces(const SymplecticPotential& pot, const ScalarField& A,
                                        int levels, int order) {
    const Polygon& poly = pot.polygon();
    const std::vector<QPoint> rule = interior_rule(poly, levels, order);
    std::vector<double> logs(rule.size()), aus(rule.size());
    parallel_for(rule.size(), [&](std::size_t i) {
        const Jet4 jet = pot.jet(rule[i].p);
        logs[i] = -rule[i].w * std::log(jet.hess.det());
        aus[i] = rule[i].w * A(rule[i].p) * jet.value;
    });
    double neg_logdet = 0.0, au = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        neg_logdet += logs[i];
        au += aus[i];
    }
    const double bdry = boundary_integral(
        poly, [&](std::size_t k, double t, Vec2) { return pot.boundary_value(k, t); },
        levels, order);
    return {neg_logdet, au, bdry};
}

} // namespace

double functional_F(const SymplecticPotential& pot, const ScalarField& A, int levels,
                    int order) {
    const auto [neg_logdet, au, bdry] = functional_pieces(pot, A, levels, order);
    return neg_logdet + au - bdry;
}

double functional_variational(const SymplecticPotential& pot, const ScalarField& A,
                              int levels, int order) {
    const auto [neg_logdet, au, bdry] = functional_pieces(pot, A, levels, order);
    return neg_logdet + bdry - au;
}

} // namespace abreu
