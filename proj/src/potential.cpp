#include "abreu/potential.hpp"

#include "abreu/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace abreu {

namespace {

// All Bernstein basis values B_{i,m}(s), i = 0..m.
void bernstein_row(int m, double s, double* out) {
    out[0] = 1.0;
    const double t = 1.0 - s;
    for (int j = 1; j <= m; ++j) {
        double saved = 0.0;
        for (int i = 0; i < j; ++i) {
            const double tmp = out[i];
            out[i] = saved + t * tmp;
            saved = s * tmp;
        }
        out[j] = saved;
    }
}

} // namespace

BernsteinPoly::BernsteinPoly(int degree, const BBox& box, std::vector<double> coeffs)
    : m_(degree), box_(box), coeffs_(std::move(coeffs)) {
    if (m_ < 0 || m_ > 15) throw input_error("correction degree must lie in [0, 15]");
    if (coeffs_.size() != coefficient_count(m_))
        throw input_error("coefficient count does not match correction degree");

    const double wx = box_.width(), wy = box_.height();
    const int n = m_ + 1;
    // diff_[p][q][i*(m+1-q)+j] = (m!/(m-p)!)(m!/(m-q)!) / (wx^p wy^q) * Dx^p Dy^q C
    for (int p = 0; p <= std::min(4, m_); ++p) {
        for (int q = 0; p + q <= std::min(4, m_); ++q) {
            const int nx = n - p, ny = n - q;
            std::vector<double>& tab = diff_[p][q];
            tab.assign(static_cast<std::size_t>(nx) * ny, 0.0);
            if (p == 0 && q == 0) {
                tab = coeffs_;
                continue;
            }
            const std::vector<double>& src = (q > 0) ? diff_[p][q - 1] : diff_[p - 1][0];
            if (q > 0) {
                const int sy = ny + 1;
                for (int i = 0; i < nx; ++i)
                    for (int j = 0; j < ny; ++j)
                        tab[i * ny + j] =
                            (src[i * sy + j + 1] - src[i * sy + j]) * (m_ - q + 1) / wy;
            } else {
                for (int i = 0; i < nx; ++i)
                    for (int j = 0; j < ny; ++j)
                        tab[i * ny + j] =
                            (src[(i + 1) * ny + j] - src[i * ny + j]) * (m_ - p + 1) / wx;
            }
        }
    }
}

double BernsteinPoly::derivative(const Vec2& p, int px, int py) const {
    if (px + py > m_) return 0.0;
    const double sx = (p.x - box_.lo.x) / box_.width();
    const double sy = (p.y - box_.lo.y) / box_.height();
    const int nx = m_ + 1 - px, ny = m_ + 1 - py;
    double bx[16], by[16];
    bernstein_row(nx - 1, sx, bx);
    bernstein_row(ny - 1, sy, by);
    const std::vector<double>& tab = diff_[px][py];
    double acc = 0.0;
    for (int i = 0; i < nx; ++i) {
        double row = 0.0;
        for (int j = 0; j < ny; ++j) row += tab[i * ny + j] * by[j];
        acc += bx[i] * row;
    }
    return acc;
}

double BernsteinPoly::value(const Vec2& p) const { return derivative(p, 0, 0); }

Jet4 BernsteinPoly::jet(const Vec2& p) const {
    Jet4 j;
    j.location = p;
    j.value = derivative(p, 0, 0);
    j.grad = {derivative(p, 1, 0), derivative(p, 0, 1)};
    j.hess = {derivative(p, 2, 0), derivative(p, 1, 1), derivative(p, 0, 2)};
    j.third.v = {derivative(p, 3, 0), derivative(p, 2, 1), derivative(p, 1, 2),
                 derivative(p, 0, 3)};
    j.fourth.v = {derivative(p, 4, 0), derivative(p, 3, 1), derivative(p, 2, 2),
                  derivative(p, 1, 3), derivative(p, 0, 4)};
    return j;
}

std::vector<double> bernstein_fit(int degree, const BBox& box,
                                  const std::function<double(Vec2)>& f) {
    const int n = degree + 1;
    const int npts = n; // uniform lattice, one node layer per coefficient layer
    Eigen::MatrixXd M(npts * npts, n * n);
    Eigen::VectorXd rhs(npts * npts);
    std::vector<double> bx(n), by(n);
    for (int a = 0; a < npts; ++a) {
        const double sx = (npts == 1) ? 0.5 : double(a) / (npts - 1);
        bernstein_row(degree, sx, bx.data());
        for (int b = 0; b < npts; ++b) {
            const double sy = (npts == 1) ? 0.5 : double(b) / (npts - 1);
            bernstein_row(degree, sy, by.data());
            const int row = a * npts + b;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) M(row, i * n + j) = bx[i] * by[j];
            rhs(row) = f({box.lo.x + sx * box.width(), box.lo.y + sy * box.height()});
        }
    }
    Eigen::VectorXd c = M.colPivHouseholderQr().solve(rhs);
    return std::vector<double>(c.data(), c.data() + c.size());
}

SymplecticPotential SymplecticPotential::canonical(const Polygon& poly, int degree) {
    return with_correction(poly, degree,
                           std::vector<double>(BernsteinPoly::coefficient_count(degree), 0.0));
}

SymplecticPotential SymplecticPotential::with_correction(const Polygon& poly, int degree,
                                                         std::vector<double> coeffs,
                                                         AffineShift shift) {
    BernsteinPoly corr(degree, poly.shape().bbox(), std::move(coeffs));
    return SymplecticPotential(poly, std::move(corr), shift, true);
}

SymplecticPotential SymplecticPotential::polynomial_only(const Polygon& poly, int degree,
                                                         std::vector<double> coeffs) {
    BernsteinPoly corr(degree, poly.shape().bbox(), std::move(coeffs));
    return SymplecticPotential(poly, std::move(corr), AffineShift{}, false);
}

SymplecticPotential SymplecticPotential::with_coefficients(std::vector<double> coeffs) const {
    BernsteinPoly corr(correction_.degree(), correction_.box(), std::move(coeffs));
    return SymplecticPotential(poly_, std::move(corr), shift_, with_log_);
}

Jet4 SymplecticPotential::jet(const Vec2& p) const {
    Jet4 j = correction_.jet(p);
    if (with_log_) {
        for (const EdgeFrame& e : poly_.edges()) {
            const double ell = e.ell(p);
            if (!(ell > 0.0))
                throw domain_error("jet evaluation at a boundary or exterior point");
            const Vec2 a = e.ell_grad();
            const double inv = 1.0 / ell;
            j.value += ell * std::log(ell);
            const double g1 = std::log(ell) + 1.0;
            j.grad += a * g1;
            const double ax[2] = {a.x, a.y};
            for (int i = 0; i < 2; ++i)
                for (int k = i; k < 2; ++k) j.hess.add(i, k, ax[i] * ax[k] * inv);
            const double inv2 = inv * inv;
            for (int i = 0; i < 2; ++i)
                for (int k = i; k < 2; ++k)
                    for (int l = k; l < 2; ++l)
                        j.third.add(i, k, l, -ax[i] * ax[k] * ax[l] * inv2);
            const double inv3 = inv2 * inv;
            for (int i = 0; i < 2; ++i)
                for (int k = i; k < 2; ++k)
                    for (int l = k; l < 2; ++l)
                        for (int q = l; q < 2; ++q)
                            j.fourth.add(i, k, l, q, 2.0 * ax[i] * ax[k] * ax[l] * ax[q] * inv3);
        }
    }
    j.add_affine(shift_.c, shift_.g);
    return j;
}

double SymplecticPotential::value(const Vec2& p) const {
    double v = correction_.value(p);
    if (with_log_) {
        for (const EdgeFrame& e : poly_.edges()) {
            const double ell = e.ell(p);
            if (ell < -1e-12 * poly_.diameter())
                throw domain_error("value evaluation outside the polygon closure");
            if (ell > 0.0) v += ell * std::log(ell);
        }
    }
    return v + shift_.c + dot(shift_.g, p);
}

Vec2 SymplecticPotential::gradient(const Vec2& p) const { return jet(p).grad; }

double SymplecticPotential::boundary_value(std::size_t k, double t) const {
    return value(poly_.edge(k).point(t));
}

SymplecticPotential SymplecticPotential::normalized() const {
    const Vec2 x0 = poly_.base_point();
    const Jet4 j = jet(x0);
    AffineShift s = shift_;
    s.g -= j.grad;
    s.c -= j.value - dot(j.grad, x0);
    return SymplecticPotential(poly_, correction_, s, with_log_);
}

SymplecticPotential SymplecticPotential::affine_canonicalized() const {
    const int m = correction_.degree();
    if (m < 1) return *this;
    const int n = m + 1;
    const BBox& box = correction_.box();
    // Affine functions have Bernstein coefficients affine in the Greville
    // abscissae, so a least-squares plane fit over the lattice extracts the
    // affine component exactly.
    std::vector<double> c = correction_.coefficients();
    double sc = 0, sx = 0, sy = 0, sxx = 0, syy = 0, sxc = 0, syc = 0;
    for (int i = 0; i < n; ++i) {
        const double gx = box.lo.x + box.width() * i / m;
        for (int j = 0; j < n; ++j) {
            const double gy = box.lo.y + box.height() * j / m;
            const double v = c[i * n + j];
            sc += v;
            sx += gx; sy += gy;
            sxx += gx * gx; syy += gy * gy;
            sxc += gx * v; syc += gy * v;
        }
    }
    const double N = double(n) * n;
    const double mx = sx / N, my = sy / N;
    const double vx = sxx / N - mx * mx, vy = syy / N - my * my;
    const double beta = (sxc / N - mx * sc / N) / vx;
    const double gamma = (syc / N - my * sc / N) / vy;
    const double alpha = sc / N - beta * mx - gamma * my;
    for (int i = 0; i < n; ++i) {
        const double gx = box.lo.x + box.width() * i / m;
        for (int j = 0; j < n; ++j) {
            const double gy = box.lo.y + box.height() * j / m;
            c[i * n + j] -= alpha + beta * gx + gamma * gy;
        }
    }
    AffineShift s = shift_;
    s.c += alpha;
    s.g += Vec2{beta, gamma};
    BernsteinPoly corr(m, box, std::move(c));
    return SymplecticPotential(poly_, std::move(corr), s, with_log_);
}

Vec2 legendre_map(const SymplecticPotential& pot, const Vec2& p) {
    if (!pot.polygon().interior(p)) throw domain_error("gradient map needs an interior point");
    return pot.gradient(p);
}

Vec2 legendre_inverse(const SymplecticPotential& pot, const Vec2& xi, Vec2 start) {
    Vec2 y = start;
    for (int it = 0; it < 100; ++it) {
        const Jet4 j = pot.jet(y);
        const Vec2 r = j.grad - xi;
        if (norm(r) < 1e-13) return y;
        Vec2 step = j.hess.inverse().apply(r);
        // keep the iterate strictly inside
        double lambda = 1.0;
        while (lambda > 1e-12 && !pot.polygon().interior(y - step * lambda)) lambda *= 0.5;
        y = y - step * lambda;
    }
    throw domain_error("gradient map inversion did not converge");
}

std::vector<Vec2> interior_grid(const Polygon& poly, int n, double d_min) {
    if (n < 1) throw input_error("grid size must be positive");
    const BBox box = poly.shape().bbox();
    std::vector<Vec2> pts;
    pts.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        const double x = box.lo.x + box.width() * (i + 1) / (n + 1);
        for (int j = 0; j < n; ++j) {
            const double y = box.lo.y + box.height() * (j + 1) / (n + 1);
            const Vec2 p{x, y};
            if (poly.shape().signed_boundary_distance(p) >= d_min) pts.push_back(p);
        }
    }
    return pts;
}

ConvexityAudit convexity_audit(const SymplecticPotential& pot, int grid_n, double d_min) {
    if (d_min < 0.0) d_min = pot.d_min();
    ConvexityAudit audit;
    audit.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (const Vec2& p : interior_grid(pot.polygon(), grid_n, d_min)) {
        const Sym2 h = pot.jet(p).hess;
        const double lo = h.eigenvalues()[0];
        if (lo < audit.min_eigenvalue) {
            audit.min_eigenvalue = lo;
            audit.argmin = p;
        }
        if (!h.positive_definite()) audit.failures.push_back(p);
    }
    return audit;
}

} // namespace abreu
