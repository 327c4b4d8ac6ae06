#include "abreu/estimates.hpp"

#include "abreu/conjugate.hpp"
#include "abreu/errors.hpp"
#include "abreu/parallel.hpp"
#include "abreu/quadrature.hpp"
#include "abreu/solver.hpp"
#include "abreu/stability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace abreu {

namespace {

double sup_A_on(const Polygon& poly, const ScalarField& A, int grid_n = 21) {
    if (A.is_constant()) return *A.constant;
    double s = -std::numeric_limits<double>::infinity();
    for (const Vec2& p : interior_grid(poly, grid_n, 0.0)) s = std::max(s, A(p));
    return s * (s > 0 ? 1.01 : 0.99); // conservative upward bias
}

double min_A_on(const Polygon& poly, const ScalarField& A, int grid_n = 21) {
    if (A.is_constant()) return *A.constant;
    double s = std::numeric_limits<double>::infinity();
    for (const Vec2& p : interior_grid(poly, grid_n, 0.0)) s = std::min(s, A(p));
    return s;
}

} // namespace

CheckRecord barrier_lower_bound(const SymplecticPotential& pot, const ScalarField& A,
                                const std::vector<Vec2>& points, BarrierSpec spec) {
    const Polygon& poly = pot.polygon();
    if (!((2.0 - spec.b) / (2.0 + spec.b) > spec.alpha))
        throw input_error("barrier parameters violate the convexity constraint");
    const double alpha = spec.alpha, b = spec.b, beta = 0.5 * b;
    // det(r_ij)/(-r) = b*alpha*y^(alpha-2)*phi(x), phi decreasing in x^2, so the
    // infimum over the cylinder sits at |x| = 1, y = 1
    const double phi1 = (1.0 - alpha) - alpha * b / (1.0 - beta);
    const double C = b * alpha * phi1;

    const double supA = sup_A_on(poly, A);
    const double data_display = std::pow(std::max(supA, 0.0) / 2.0, 2.0);
    const double data_derived =
        supA > 0.0 ? std::pow(2.0 / supA, 2.0) : std::numeric_limits<double>::infinity();

    CheckRecord rec;
    rec.id = "det_lower_barrier";
    rec.description = "lower bound on det(u_ij) from the cylinder barrier comparison";
    rec.margin = std::numeric_limits<double>::infinity();
    rec.pass = true;
    double worst_ratio = std::numeric_limits<double>::infinity();
    double alt_margin = std::numeric_limits<double>::infinity();
    for (const Vec2& p : points) {
        // frame adapted to the nearest edge: q the foot, y the inward normal offset
        double d = std::numeric_limits<double>::infinity();
        const EdgeFrame* nearest = nullptr;
        for (const EdgeFrame& e : poly.edges()) {
            const double dist = dot(e.inward_normal, p) - e.offset;
            if (dist < d) {
                d = dist;
                nearest = &e;
            }
        }
        const Vec2 foot = p - nearest->inward_normal * d;
        const Vec2 that = perp(nearest->inward_normal);
        double s = 0.0;
        for (const Vec2& v : poly.vertices())
            s = std::max({s, std::abs(dot(v - foot, that)), dot(v - foot, nearest->inward_normal)});
        s *= 1.01;
        // rescaled barrier R_s(x) = s^4 C^{-1} r(x/s); at p the tangential
        // offset vanishes, so -R_s(p) = s^4 C^{-1} (d/s)^alpha
        const double neg_R = std::pow(s, 4.0) / C * std::pow(d / s, alpha);
        const double bound = data_display / neg_R;
        const double det = pot.jet(p).hess.det();
        rec.margin = std::min(rec.margin, det - bound);
        worst_ratio = std::min(worst_ratio, bound > 0 ? det / bound : INFINITY);
        if (det < bound) rec.pass = false;
        alt_margin = std::min(alt_margin, det - data_derived / neg_R);
    }
    rec.lhs = rec.margin;
    rec.rhs = 0.0;
    rec.meta["points"] = static_cast<double>(points.size());
    rec.meta["barrier_C"] = C;
    rec.meta["worst_det_over_bound"] = worst_ratio;
    rec.meta["alt_orientation_margin"] = alt_margin;
    return rec;
}

CheckRecord det_upper_in_section(const SymplecticPotential& pot, const ScalarField& A,
                                 const Vec2& x, double t, int nrays) {
    const Section sec = section_boundary(pot, x, t, nrays);
    const Jet4 jx = pot.jet(x);

    // sample the closed section: boundary ring plus radial interior rings
    std::vector<Vec2> samples = sec.boundary;
    const int rings = 4; // 128 * 4 = 512 interior points by default
    for (int ring = 1; ring <= rings; ++ring)
        for (int i = 0; i < nrays; ++i) {
            const double f = double(ring) / (rings + 1);
            samples.push_back(x + (sec.boundary[i] - x) * f);
        }

    std::vector<Vec2> grads(samples.size());
    std::vector<double> utilde(samples.size()), dets(samples.size());
    parallel_for(samples.size(), [&](std::size_t i) {
        const Jet4 j = pot.jet(samples[i]);
        grads[i] = j.grad - jx.grad;
        utilde[i] = j.value - jx.value - dot(jx.grad, samples[i] - x) - t;
        dets[i] = j.hess.det();
    });

    // the constant realises a centered quadratic-form bound on the gradient
    // image, so the least ellipse must be centered at the origin: symmetrise
    std::vector<Vec2> sym(grads);
    for (const Vec2& g : grads) sym.push_back(-g);
    const Ellipse ell = min_enclosing_ellipse(sym);
    double C2 = 0.0;
    for (const Vec2& g : grads) C2 = std::max(C2, norm2(g));
    const double C = std::sqrt(ell.area() / M_PI);
    const double a = std::max(0.0, -min_A_on(pot.polygon(), A));
    const double M = t;
    const double factor = (2.5 + a * M / 4.0) * std::exp(1.0) * C;

    char level_buf[32];
    std::snprintf(level_buf, sizeof(level_buf), "%g", t);
    CheckRecord rec;
    rec.id = std::string("det_upper_sections_t") + level_buf;
    rec.description =
        std::string("upper bound on det(u_ij)^{1/2} within the section at level ") + level_buf;
    rec.margin = std::numeric_limits<double>::infinity();
    rec.pass = true;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (utilde[i] >= -1e-12) continue; // boundary ring itself
        const double lhs = std::sqrt(dets[i]);
        const double rhs = factor / (-utilde[i]);
        rec.margin = std::min(rec.margin, rhs - lhs);
        if (lhs > rhs) rec.pass = false;
    }
    rec.lhs = rec.margin;
    rec.rhs = 0.0;
    rec.meta["C"] = C;
    rec.meta["gradient_radius"] = std::sqrt(C2);
    rec.meta["a"] = a;
    rec.meta["M"] = M;
    rec.meta["samples"] = static_cast<double>(samples.size());
    return rec;
}

std::vector<FaceAsymptotics> boundary_asymptotics(const SymplecticPotential& pot,
                                                  double t_along_edge, double d0_factor) {
    if (t_along_edge < 0.1 || t_along_edge > 0.9)
        throw input_error("asymptotics rays must stay away from the corners");
    const Polygon& poly = pot.polygon();
    std::vector<FaceAsymptotics> out;
    for (std::size_t k = 0; k < poly.edge_count(); ++k) {
        const EdgeFrame& e = poly.edge(k);
        const Vec2 foot = e.point(t_along_edge);
        const double d0 = d0_factor * poly.diameter();
        std::vector<double> ds, vals;
        for (int j = 3; j <= 10; ++j) {
            const double d = std::ldexp(d0, -j);
            const Vec2 p = foot + e.inward_normal * d;
            ds.push_back(d);
            vals.push_back(pot.jet(p).hess.det() * d);
        }
        // linear model det*d = limit + slope*d
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(ds.size());
        for (std::size_t i = 0; i < ds.size(); ++i) {
            sx += ds[i];
            sy += vals[i];
            sxx += ds[i] * ds[i];
            sxy += ds[i] * vals[i];
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        const double limit = (sy - slope * sx) / n;
        double res = 0.0;
        for (std::size_t i = 0; i < ds.size(); ++i)
            res = std::max(res, std::abs(limit + slope * ds[i] - vals[i]));
        out.push_back({k, limit, res});
    }
    return out;
}

MeanValueIdentity mean_value_identity(const SymplecticPotential& pot, const ScalarField& A,
                                      const Vec2& center, double radius, int radial_levels,
                                      int order, int angular_segments) {
    const Polygon& poly = pot.polygon();
    if (poly.boundary_distance(center) <= radius)
        throw input_error("mean-value disc is not compactly contained in the polygon");

    const Jet4 j0 = pot.jet(center);
    const double L0 = std::log(j0.hess.det());
    const double vol = M_PI * radius * radius;

    const std::vector<QPoint> rule =
        disc_rule(center, radius, radial_levels, order, angular_segments);
    std::vector<double> Lw(rule.size()), Iw(rule.size()), IIw(rule.size());
    parallel_for(rule.size(), [&](std::size_t i) {
        const Vec2& p = rule[i].p;
        const PointState st = hessian_package(pot.jet(p));
        const Vec2 rel = p - center;
        const double r2 = norm2(rel);
        const double f = 1.0 - radius * radius / r2;
        const Vec2 fgrad = rel * (2.0 * radius * radius / (r2 * r2));
        // h for the locally normalised potential
        const double h = (st.jet.value - j0.value - dot(j0.grad, rel)) -
                         dot(st.jet.grad - j0.grad, rel);
        Lw[i] = rule[i].w * st.L;
        Iw[i] = rule[i].w * h * dot(fgrad, st.v);
        IIw[i] = rule[i].w * A(p) * f * h;
    });
    MeanValueIdentity out;
    double avL = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        avL += Lw[i];
        out.I += Iw[i];
        out.II += IIw[i];
    }
    avL /= vol;
    out.lhs = 2.0 * vol * (L0 - avL);
    const double rhs = out.I + out.II;
    out.rel_residual = std::abs(out.lhs - rhs) /
                       std::max({std::abs(out.lhs), std::abs(rhs), 1e-12});

    // derived bound |L(0) - Av L| <= C int_bdry u~ dnu
    double supv = 0.0, supA = 0.0;
    for (const QPoint& q : rule) {
        const PointState st = hessian_package(pot.jet(q.p));
        supv = std::max(supv, norm(st.v));
        supA = std::max(supA, std::abs(A(q.p)));
    }
    supv *= 1.01;
    supA *= 1.01;
    double ring = 0.0;
    const auto& g1 = gauss01(order);
    const int segs = angular_segments;
    for (int s = 0; s < segs; ++s)
        for (const QPoint1& q : g1) {
            const double th = 2.0 * M_PI * (s + q.t) / segs;
            const Vec2 p{center.x + radius * std::cos(th), center.y + radius * std::sin(th)};
            const double ut = pot.value(p) - j0.value - dot(j0.grad, p - center);
            ring += q.w * (2.0 * M_PI / segs) * radius * ut;
        }
    const double Cbound = (2.0 * supv + radius * supA) / (2.0 * vol);
    out.bound_lhs = std::abs(L0 - avL);
    out.bound_rhs = Cbound * ring;
    return out;
}

InteriorBounds interior_bounds_report(const SymplecticPotential& pot, int grid_n) {
    const Polygon& poly = pot.polygon();
    InteriorBounds out;
    out.boundary_integral = boundary_integral(
        poly, [&](std::size_t k, double t, Vec2) { return pot.boundary_value(k, t); });
    out.implied_lambda = out.boundary_integral / 2.0;

    std::vector<double> Ls, gnorms;
    for (const Vec2& p : interior_grid(poly, grid_n, pot.d_min())) {
        const Jet4 j = pot.jet(p);
        const double d = poly.boundary_distance(p);
        const double gn = norm(j.grad);
        out.sup_grad_d2 = std::max(out.sup_grad_d2, gn * d * d);
        Ls.push_back(std::log(j.hess.det()));
        gnorms.push_back(gn);
    }
    // least-squares line L ~ C0 + C1 |grad u|
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(Ls.size());
    for (std::size_t i = 0; i < Ls.size(); ++i) {
        sx += gnorms[i];
        sy += Ls[i];
        sxx += gnorms[i] * gnorms[i];
        sxy += gnorms[i] * Ls[i];
    }
    const double denom = n * sxx - sx * sx;
    out.fit_C1 = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
    out.fit_C0 = (sy - out.fit_C1 * sx) / n;
    for (std::size_t i = 0; i < Ls.size(); ++i)
        out.fit_max_violation =
            std::max(out.fit_max_violation, Ls[i] - (out.fit_C0 + out.fit_C1 * gnorms[i]));
    return out;
}

double chi_of(const SymplecticPotential& pot, int levels, int order) {
    const std::vector<QPoint> rule = interior_rule(pot.polygon(), levels, order);
    std::vector<double> vals(rule.size());
    parallel_for(rule.size(), [&](std::size_t i) {
        const PointState st = hessian_package(pot.jet(rule[i].p));
        const CurvaturePack cp = curvature_tensors(st);
        vals[i] = rule[i].w * (cp.normF2 - cp.S * cp.S);
    });
    double acc = 0.0;
    for (double v : vals) acc += v;
    return acc;
}

ChiValues chi_invariant(const std::vector<SymplecticPotential>& potentials, int levels,
                        int order) {
    ChiValues out;
    for (const SymplecticPotential& pot : potentials) out.values.push_back(chi_of(pot, levels, order));
    if (!out.values.empty()) {
        const auto [lo, hi] = std::minmax_element(out.values.begin(), out.values.end());
        out.spread = *hi - *lo;
        out.error_estimate =
            std::abs(out.values.front() - chi_of(potentials.front(), levels - 3, order));
        out.inconclusive = out.spread < out.error_estimate;
    }
    return out;
}

PogorelovReport pogorelov_check(const SymplecticPotential& pot, double c, int nrays,
                                int radial_samples) {
    const SymplecticPotential u = pot.normalized();
    const Vec2 x0 = u.polygon().base_point();
    Section sec;
    try {
        sec = section_boundary(u, x0, c, nrays);
    } catch (const domain_error&) {
        throw input_error("sublevel set {u < c} touches the boundary; pick a smaller c");
    }

    std::vector<Vec2> samples;
    for (int i = 0; i < nrays; ++i) {
        for (int j = 1; j <= radial_samples; ++j)
            samples.push_back(x0 + (sec.boundary[i] - x0) * (double(j) / (radial_samples + 1)));
        samples.push_back(sec.boundary[i]); // the sup constants see the rim
    }
    samples.push_back(x0);
    if (samples.size() < 16) throw input_error("sublevel set too small to sample");

    PogorelovReport rep{};
    std::vector<double> lc0(samples.size()), lc1(samples.size()), lc2(samples.size()),
        lc3(samples.size()), lhs(samples.size());
    parallel_for(samples.size(), [&](std::size_t i) {
        const PointState st = hessian_package(u.jet(samples[i]));
        const CurvaturePack cp = curvature_tensors(st);
        const double ut = st.jet.value - c; // negative on D
        lc0[i] = -ut;
        lc1[i] = cp.normG();
        lc2[i] = norm(st.v);
        lc3[i] = norm(st.jet.grad);
        lhs[i] = st.jet.hess.eigenvalues()[1] * std::abs(ut);
    });
    for (std::size_t i = 0; i < samples.size(); ++i) {
        rep.c0 = std::max(rep.c0, lc0[i]);
        rep.c1 = std::max(rep.c1, lc1[i]);
        rep.c2 = std::max(rep.c2, lc2[i]);
        rep.c3 = std::max(rep.c3, lc3[i]);
        rep.max_lhs = std::max(rep.max_lhs, lhs[i]);
    }
    rep.c0 *= 1.01;
    rep.c1 *= 1.01;
    rep.c2 *= 1.01;
    rep.c3 *= 1.01;
    const double N = 2.0 + rep.c2 * rep.c3 + rep.c1 * rep.c0;
    rep.K = 0.5 * std::exp(0.5 * rep.c3 * rep.c3) *
            (N + std::sqrt(N * N + 4.0 * rep.c3 * rep.c3));
    rep.pass = rep.max_lhs <= rep.K;
    return rep;
}

CurvatureReport curvature_reports(const SymplecticPotential& pot, const Vec2& disc_center,
                                  double disc_radius, const ConvexPoly& K, int grid_n,
                                  int boundary_samples) {
    CurvatureReport out;
    const std::vector<QPoint> rule = disc_rule(disc_center, disc_radius, 8, 7, 16);
    std::vector<double> vals(rule.size());
    parallel_for(rule.size(), [&](std::size_t i) {
        const CurvaturePack cp = curvature_tensors(hessian_package(pot.jet(rule[i].p)));
        vals[i] = rule[i].w * cp.normF2;
    });
    for (double v : vals) out.energy += v;
    const CurvaturePack cp0 = curvature_tensors(hessian_package(pot.jet(disc_center)));
    out.G2_center = cp0.normG2;
    out.ratio = out.G2_center / (out.energy + std::pow(out.energy, 3.0));

    // Phi = |G| * H_x(boundary of K) over a grid in K
    std::vector<Vec2> bdry;
    const std::size_t ne = K.size();
    const int per_edge = std::max(1, boundary_samples / static_cast<int>(ne));
    for (std::size_t k = 0; k < ne; ++k) {
        const Vec2& a = K.vertex(k);
        const Vec2& b = K.vertex((k + 1) % ne);
        for (int j = 0; j < per_edge; ++j) bdry.push_back(a + (b - a) * (double(j) / per_edge));
    }
    const BBox box = K.bbox();
    for (int i = 0; i < grid_n; ++i)
        for (int j = 0; j < grid_n; ++j) {
            const Vec2 p{box.lo.x + box.width() * (i + 1) / (grid_n + 1),
                         box.lo.y + box.height() * (j + 1) / (grid_n + 1)};
            if (!K.contains(p)) continue;
            const Jet4 jp = pot.jet(p);
            const CurvaturePack cp = curvature_tensors(hessian_package(jp));
            double hx = std::numeric_limits<double>::infinity();
            for (const Vec2& y : bdry)
                hx = std::min(hx, pot.value(y) - jp.value - dot(jp.grad, y - p));
            const double phi = cp.normG() * hx;
            if (phi > out.Phi_max) {
                out.Phi_max = phi;
                out.Phi_argmax = p;
            }
        }
    return out;
}

VerificationReport run_verification(const SymplecticPotential& pot_in, const ScalarField& A,
                                    const VerifyOptions& opts) {
    VerificationReport report;
    const SymplecticPotential pot = pot_in.normalized();
    const Polygon& poly = pot.polygon();
    const Vec2 x0 = poly.base_point();

    { // normalisation
        const Jet4 j = pot.jet(x0);
        report.add(CheckRecord::residual("normalization",
                                         "u and grad u vanish at the base point",
                                         std::max(std::abs(j.value), norm(j.grad)), 1e-12));
    }

    const std::vector<Vec2> grid = interior_grid(poly, opts.grid_n, pot.d_min());

    { // pointwise identity block and S-form agreement over the grid
        double dev = 0.0, ident = 0.0;
        for (const Vec2& p : grid) {
            const PointState st = hessian_package(pot.jet(p));
            const SForms f = abreu_S_forms(st);
            dev = std::max(dev, f.max_dev / std::max(1.0, std::abs(f.S1)));
            // u^{ij} u_{jk} = delta, eq-8 identity, h-gradient identity
            for (int i = 0; i < 2; ++i)
                for (int k = 0; k < 2; ++k) {
                    double s = 0.0;
                    for (int j = 0; j < 2; ++j) s += st.hess_inv(i, j) * st.jet.hess(j, k);
                    ident = std::max(ident, std::abs(s - (i == k ? 1.0 : 0.0)));
                }
            const Vec2 Li = log_det_gradient(st);
            for (int i = 0; i < 2; ++i) {
                double lhs = 0.0, rhs = 0.0;
                for (int j = 0; j < 2; ++j) {
                    lhs += st.hess_inv(i, j) * Li[j];
                    rhs -= st.d1[j][j][i];
                }
                ident = std::max(ident, std::abs(lhs - rhs));
            }
            ident = std::max(ident, vector_fields(st, A(p), x0).h_grad_residual);
        }
        report.add(CheckRecord::residual("s_forms_agreement",
                                         "the evaluation routes for S agree", dev, 1e-8));
        report.add(CheckRecord::residual("pointwise_identities",
                                         "inverse, log-gradient and h-gradient identities",
                                         ident, 1e-10));
    }

    { // convexity and the residual of the equation itself
        const ConvexityAudit audit = convexity_audit(pot, opts.grid_n);
        CheckRecord c = CheckRecord::bound("convexity", "Hessian positive definite on the grid",
                                           0.0, audit.min_eigenvalue);
        c.pass = audit.convex();
        c.meta["min_eigenvalue"] = audit.min_eigenvalue;
        report.add(c);

        double rmax = 0.0;
        for (const Vec2& p : grid)
            rmax = std::max(rmax, std::abs(hessian_package(pot.jet(p)).S - A(p)));
        CheckRecord r = CheckRecord::report("equation_residual",
                                            "max |S(u) - A| over the verification grid", rmax);
        r.meta["grid"] = static_cast<double>(grid.size());
        report.add(r);
    }

    { // affine kernel and the linear functional on the solution
        const KernelResiduals kr = affine_kernel_check(poly, A);
        CheckRecord c = CheckRecord::residual(
            "affine_kernel", "linear functional vanishes on 1, x, y",
            std::max({std::abs(kr.on_one), std::abs(kr.on_x), std::abs(kr.on_y)}),
            kr.tolerance);
        report.add(c);

        const LinFuncValue lu = linfunc(poly, A, pot);
        // integrated trace identity: L(u) = n Vol(polygon)
        CheckRecord lrec = CheckRecord::residual(
            "lin_functional_solution", "the functional applied to u equals n Vol",
            lu.L - 2.0 * poly.area(), 1e-4 * std::max(1.0, poly.area()));
        lrec.meta["L_of_u"] = lu.L;
        lrec.meta["boundary_integral"] = lu.boundary_integral;
        report.add(lrec);
        CheckRecord fv = CheckRecord::report("functional_value",
                                             "value of the functional (display convention)",
                                             functional_F(pot, A));
        fv.meta["descent_orientation"] = functional_variational(pot, A);
        report.add(fv);
    }

    { // guillemin metric determinant
        double worst = 0.0;
        for (const Vec2& p : grid) {
            const PointState st = hessian_package(pot.jet(p));
            const auto g = guillemin_metric(st);
            const double det =
                (g[0][0] * g[1][1] - g[0][1] * g[1][0]) * (g[2][2] * g[3][3] - g[2][3] * g[3][2]);
            worst = std::max(worst, std::abs(det - 1.0));
        }
        report.add(CheckRecord::residual("guillemin_determinant",
                                         "block metric has unit determinant", worst, 1e-12));
    }

    // interior estimates
    report.add(barrier_lower_bound(pot, A, grid));
    for (double t : opts.section_levels) {
        try {
            report.add(det_upper_in_section(pot, A, x0, t));
        } catch (const domain_error&) {
            char level_buf[32];
            std::snprintf(level_buf, sizeof(level_buf), "%g", t);
            report.add(CheckRecord::report(std::string("det_upper_sections_t") + level_buf,
                                           "section escaped the domain; level skipped", 0.0));
        }
    }

    { // boundary determinant asymptotics
        for (const FaceAsymptotics& fa : boundary_asymptotics(pot)) {
            CheckRecord c = CheckRecord::bound(
                "boundary_asymptotics_face" + std::to_string(fa.face),
                "det * d approaches a positive finite limit at the face", fa.fit_residual,
                0.05 * std::abs(fa.limit));
            c.meta["limit"] = fa.limit;
            c.pass = c.pass && fa.limit > 0.0;
            report.add(c);
        }
    }

    { // mean-value identity on the centered disc
        const double R = opts.disc_radius_factor * poly.boundary_distance(x0);
        const MeanValueIdentity mv = mean_value_identity(pot, A, x0, R);
        CheckRecord c = CheckRecord::residual("mean_value_identity",
                                              "exact disc identity for L", mv.rel_residual,
                                              1e-3);
        c.meta["I"] = mv.I;
        c.meta["II"] = mv.II;
        c.meta["lhs"] = mv.lhs;
        c.meta["radius"] = R;
        report.add(c);
        report.add(CheckRecord::bound("mean_value_bound",
                                      "derived bound on the deviation of L", mv.bound_lhs,
                                      mv.bound_rhs));
    }

    { // pogorelov-type interior Hessian bound
        double min_bdry = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < poly.edge_count(); ++k)
            for (int i = 0; i <= 64; ++i)
                min_bdry = std::min(min_bdry, pot.boundary_value(k, i / 64.0));
        const double c = opts.pogorelov_level_factor * min_bdry;
        const PogorelovReport pr = pogorelov_check(pot, c);
        CheckRecord rec = CheckRecord::bound("pogorelov_hessian",
                                             "Hessian bound on the sublevel set", pr.max_lhs,
                                             pr.K);
        rec.meta["c0"] = pr.c0;
        rec.meta["c1"] = pr.c1;
        rec.meta["c2"] = pr.c2;
        rec.meta["c3"] = pr.c3;
        rec.meta["level"] = c;
        report.add(rec);
    }

    { // transfer of v-bounds to L along gradient segments
        double supv = 0.0;
        for (const Vec2& p : grid) supv = std::max(supv, norm(hessian_package(pot.jet(p)).v));
        supv *= 1.01;
        std::mt19937_64 rng(opts.rng_seed);
        std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
        std::vector<std::pair<Vec2, Vec2>> pairs;
        for (int i = 0; i < 100; ++i) pairs.emplace_back(grid[pick(rng)], grid[pick(rng)]);
        const TransferReport tr = l_transfer_check(pot, supv, pairs);
        CheckRecord rec = CheckRecord::bound("l_transfer",
                                             "log-det differences bounded through the "
                                             "gradient image",
                                             0.0, tr.worst_margin);
        rec.pass = tr.pass;
        rec.meta["sup_v"] = supv;
        rec.meta["max_lhs"] = tr.max_lhs;
        report.add(rec);
    }

    { // chi and curvature diagnostics
        report.add(CheckRecord::report("chi_solution",
                                        "integral of |F|^2 - S^2 over the polygon",
                                        chi_of(pot)));
        const double R = 0.5 * poly.boundary_distance(x0);
        std::vector<Vec2> kverts;
        for (int i = 0; i < 4; ++i) {
            const double th = 2.0 * M_PI * (i + 0.5) / 4.0;
            kverts.push_back(x0 + Vec2{std::cos(th), std::sin(th)} * (1.2 * R));
        }
        const CurvatureReport cr =
            curvature_reports(pot, x0, R, ConvexPoly(kverts));
        CheckRecord ym = CheckRecord::report("yang_mills_energy",
                                             "curvature energy on the centered disc",
                                             cr.energy);
        ym.meta["G2_center"] = cr.G2_center;
        ym.meta["ratio"] = cr.ratio;
        report.add(ym);
        CheckRecord phi = CheckRecord::report("phi_diagnostic",
                                              "max of |G| H_x over the centered region",
                                              cr.Phi_max);
        report.add(phi);
    }

    { // exact rescaling laws
        const double ts[3] = {0.25, 1.0, 4.0};
        const Mat2 Ts[3] = {Mat2::identity(), Mat2::diag(2.0, 0.5),
                            Mat2{{{1.0, 0.7}, {0.0, 1.0}}}};
        double worst = 0.0;
        double phi_dev = 0.0;
        for (double t : ts)
            for (const Mat2& T : Ts) {
                const RescaledPotential rp(pot, t, T);
                for (const Vec2& q : {x0 + Vec2{0.02, 0.013}, x0 - Vec2{0.015, 0.021}}) {
                    const Vec2 p = rp.map_from_base(q);
                    const PointState base_st = hessian_package(pot.jet(q));
                    const PointState resc_st = hessian_package(rp.jet(p));
                    const CurvaturePack cb = curvature_tensors(base_st);
                    const CurvaturePack cr2 = curvature_tensors(resc_st);
                    worst = std::max(worst, std::abs(resc_st.det_hess - base_st.det_hess) /
                                                base_st.det_hess);
                    if (cb.normF() > 1e-12)
                        worst = std::max(worst,
                                         std::abs(cr2.normF() - t * cb.normF()) /
                                             (t * cb.normF()));
                    if (cb.normG() > 1e-12)
                        worst = std::max(worst,
                                         std::abs(cr2.normG() - t * cb.normG()) /
                                             (t * cb.normG()));
                    const Mat2 S = T.inverse();
                    const Vec2 expected = S.apply(base_st.v) * std::sqrt(t);
                    worst = std::max(worst, norm(resc_st.v - expected) /
                                                std::max(1e-12, norm(expected)));
                    // Phi built from |G| and H_x scales reciprocally
                    const Vec2 ybase = q + Vec2{0.05, 0.02};
                    const double hb = h_distance(pot, q, ybase);
                    const double hr = h_distance(rp, p, rp.map_from_base(ybase));
                    const double phib = cb.normG() * hb;
                    const double phir = cr2.normG() * hr;
                    if (std::abs(phib) > 1e-12)
                        phi_dev = std::max(phi_dev, std::abs(phir - phib) / std::abs(phib));
                }
            }
        report.add(CheckRecord::residual("scaling_laws",
                                         "det, |F|, |G|, v transform exactly under rescaling",
                                         worst, 1e-9));
        report.add(CheckRecord::residual("phi_rescale_invariance",
                                         "|G| H_x is invariant under rescaling", phi_dev,
                                         1e-9));
    }

    if (opts.with_conjugate && A.is_constant()) {
        const double Ac = *A.constant;
        const BoundaryFunction b = boundary_b(poly, Ac, x0);
        const double K = three_point_K(poly, b);
        const HamiltonianField hf = hamiltonian(pot, Ac, x0);
        report.add(CheckRecord::residual("conjugate_loop_closure",
                                         "circulation of grad H vanishes",
                                         hf.diag.loop_closure_sup, 1e-8));
        report.add(CheckRecord::residual("conjugate_qh",
                                         "H solves the cofactor-Laplace equation",
                                         hf.diag.qh_residual_sup, 1e-5));
        const ConjugateFunction H(pot, Ac, x0);
        const BoundaryComparison bc = boundary_compare(H, poly, b);
        report.add(CheckRecord::residual("conjugate_boundary",
                                         "H extends continuously to the boundary values b",
                                         bc.sup_deviation, 1e-3));
        const VBoundReport vb = v_bound_check(pot, Ac, x0, K);
        CheckRecord rec = CheckRecord::bound("conjugate_v_bound",
                                             "sup |w| bounded by the three-point constant",
                                             vb.sup_w, vb.K + 1e-6);
        rec.meta["sup_v"] = vb.sup_v;
        rec.meta["v_bound"] = vb.v_bound;
        rec.meta["K"] = K;
        report.add(rec);
    }

    // interior bound reports
    const InteriorBounds ib = interior_bounds_report(pot, opts.grid_n);
    CheckRecord ibrec = CheckRecord::report("interior_bounds",
                                            "boundary integral of u and derived quantities",
                                            ib.boundary_integral);
    ibrec.meta["implied_lambda"] = ib.implied_lambda;
    ibrec.meta["sup_grad_d2"] = ib.sup_grad_d2;
    ibrec.meta["fit_C0"] = ib.fit_C0;
    ibrec.meta["fit_C1"] = ib.fit_C1;
    ibrec.meta["fit_max_violation"] = ib.fit_max_violation;
    report.add(ibrec);

    return report;
}

} // namespace abreu
