#include "abreu/ellipse.hpp"

#include "abreu/errors.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace abreu {

Ellipse::Axes Ellipse::axes() const {
    const auto ev = P.eigenvalues(); // ascending: small eigenvalue = long axis
    Axes ax;
    ax.a1 = 1.0 / std::sqrt(ev[0]);
    ax.a2 = 1.0 / std::sqrt(ev[1]);
    // eigenvector for ev[0]
    Vec2 u;
    if (std::abs(P.xy) > 1e-300) {
        u = {ev[0] - P.yy, P.xy};
    } else {
        u = (P.xx <= P.yy) ? Vec2{1, 0} : Vec2{0, 1};
    }
    const double n = norm(u);
    if (n == 0.0) u = {1, 0};
    else u = u / n;
    if (u.x < 0.0 || (u.x == 0.0 && u.y < 0.0)) u = -u;
    const Vec2 w = perp(u);
    Ellipse::Axes out = ax;
    out.rotation = Mat2{{{u.x, w.x}, {u.y, w.y}}};
    return out;
}

Ellipse min_enclosing_ellipse(const std::vector<Vec2>& raw_points, double tol, int max_iter) {
    if (raw_points.size() < 3) throw input_error("enclosing ellipse needs at least 3 points");
    // only hull vertices can be active constraints
    std::vector<Vec2> points = convex_hull(raw_points);
    if (points.size() < 3) points = raw_points; // degenerate input, let worst-point inflation cope
    const std::size_t n = points.size();

    Eigen::Matrix<double, 3, Eigen::Dynamic> Q(3, n);
    for (std::size_t i = 0; i < n; ++i) Q.col(i) << points[i].x, points[i].y, 1.0;

    Eigen::VectorXd u = Eigen::VectorXd::Constant(n, 1.0 / double(n));
    for (int it = 0; it < max_iter; ++it) {
        const Eigen::Matrix3d M = Q * u.asDiagonal() * Q.transpose();
        const Eigen::Matrix3d Minv = M.inverse();
        Eigen::Index jmax = 0;
        double wmax = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double w = Q.col(i).dot(Minv * Q.col(i));
            if (w > wmax) {
                wmax = w;
                jmax = static_cast<Eigen::Index>(i);
            }
        }
        if (wmax <= 3.0 * (1.0 + tol)) break;
        const double kappa = (wmax - 3.0) / (3.0 * (wmax - 1.0));
        u *= (1.0 - kappa);
        u(jmax) += kappa;
    }

    Eigen::Vector2d c = Eigen::Vector2d::Zero();
    for (std::size_t i = 0; i < n; ++i) c += u(i) * Eigen::Vector2d(points[i].x, points[i].y);
    Eigen::Matrix2d S = Eigen::Matrix2d::Zero();
    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Vector2d p(points[i].x, points[i].y);
        S += u(i) * p * p.transpose();
    }
    S -= c * c.transpose();
    const Eigen::Matrix2d Pm = S.inverse() / 2.0;

    Ellipse e;
    e.center = {c(0), c(1)};
    e.P = {Pm(0, 0), 0.5 * (Pm(0, 1) + Pm(1, 0)), Pm(1, 1)};
    if (!(e.P.det() > 0.0) || !std::isfinite(e.P.det()))
        throw domain_error("point set too close to a segment for an enclosing ellipse");
    // guarantee the enclosing property by inflating to the farthest point
    double worst = 0.0;
    for (const Vec2& p : raw_points) {
        const Vec2 d = p - e.center;
        worst = std::max(worst, d.x * (e.P.xx * d.x + e.P.xy * d.y) +
                                    d.y * (e.P.xy * d.x + e.P.yy * d.y));
    }
    if (worst > 1.0) e.P = e.P * (1.0 / worst);
    return e;
}

} // namespace abreu
