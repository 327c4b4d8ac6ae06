#pragma once

// Test-only oracles: closed-form jets of the two gold potentials
// (independent of the library's evaluation path) and finite-difference
// utilities used to validate analytic derivatives.

#include "abreu/geom.hpp"
#include "abreu/jets.hpp"
#include "abreu/polytope.hpp"
#include "abreu/potential.hpp"

#include <cmath>
#include <functional>
#include <random>

namespace oracles {

using namespace abreu;

inline Polygon unit_square() {
    return Polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {1, 1, 1, 1}, {0.5, 0.5});
}

inline Polygon simplex() {
    return Polygon({{0, 0}, {1, 0}, {0, 1}}, {1.0, 1.0 / std::sqrt(2.0), 1.0},
                   {1.0 / 3.0, 1.0 / 3.0});
}

inline Polygon square2() {
    return Polygon({{0, 0}, {2, 0}, {2, 2}, {0, 2}}, {1, 1, 1, 1}, {1.0, 1.0});
}

// u = x log x + (1-x) log(1-x) + y log y + (1-y) log(1-y), all derivatives
// written out by hand
inline Jet4 square_gold_jet(const Vec2& p) {
    auto d0 = [](double t) { return t * std::log(t) + (1 - t) * std::log(1 - t); };
    auto d1 = [](double t) { return std::log(t) - std::log(1 - t); };
    auto d2 = [](double t) { return 1.0 / t + 1.0 / (1 - t); };
    auto d3 = [](double t) { return -1.0 / (t * t) + 1.0 / ((1 - t) * (1 - t)); };
    auto d4 = [](double t) {
        return 2.0 / (t * t * t) + 2.0 / ((1 - t) * (1 - t) * (1 - t));
    };
    Jet4 j;
    j.location = p;
    j.value = d0(p.x) + d0(p.y);
    j.grad = {d1(p.x), d1(p.y)};
    j.hess = {d2(p.x), 0.0, d2(p.y)};
    j.third.v = {d3(p.x), 0.0, 0.0, d3(p.y)};
    j.fourth.v = {d4(p.x), 0.0, 0.0, 0.0, d4(p.y)};
    return j;
}

// u = x log x + y log y + z log z with z = 1 - x - y
inline Jet4 simplex_gold_jet(const Vec2& p) {
    const double x = p.x, y = p.y, z = 1.0 - p.x - p.y;
    Jet4 j;
    j.location = p;
    j.value = x * std::log(x) + y * std::log(y) + z * std::log(z);
    j.grad = {std::log(x) - std::log(z), std::log(y) - std::log(z)};
    j.hess = {1 / x + 1 / z, 1 / z, 1 / y + 1 / z};
    const double z2 = z * z, z3 = z2 * z;
    j.third.v = {-1 / (x * x) + 1 / z2, 1 / z2, 1 / z2, -1 / (y * y) + 1 / z2};
    j.fourth.v = {2 / (x * x * x) + 2 / z3, 2 / z3, 2 / z3, 2 / z3,
                  2 / (y * y * y) + 2 / z3};
    return j;
}

// central difference of a scalar field
inline double fd1(const std::function<double(Vec2)>& f, Vec2 p, int axis, double h = 1e-5) {
    Vec2 a = p, b = p;
    a[axis] += h;
    b[axis] -= h;
    return (f(a) - f(b)) / (2 * h);
}

inline double fd2(const std::function<double(Vec2)>& f, Vec2 p, int ax1, int ax2,
                  double h = 1e-4) {
    if (ax1 == ax2) {
        Vec2 a = p, b = p;
        a[ax1] += h;
        b[ax1] -= h;
        return (f(a) - 2 * f(p) + f(b)) / (h * h);
    }
    Vec2 pp = p, pm = p, mp = p, mm = p;
    pp[ax1] += h; pp[ax2] += h;
    pm[ax1] += h; pm[ax2] -= h;
    mp[ax1] -= h; mp[ax2] += h;
    mm[ax1] -= h; mm[ax2] -= h;
    return (f(pp) - f(pm) - f(mp) + f(mm)) / (4 * h * h);
}

// Random jet of an actual convex polynomial: positive-definite quadratic
// plus small cubic and quartic terms, differentiated exactly at p.
inline Jet4 random_convex_polynomial_jet(std::mt19937_64& rng, const Vec2& p) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double a = 1.5 + u(rng), b = 0.5 * u(rng), c = 1.5 + u(rng);
    double c3[4], c4[5];
    for (double& v : c3) v = 0.1 * u(rng);
    for (double& v : c4) v = 0.05 * u(rng);

    Jet4 j;
    j.location = p;
    const double x = p.x, y = p.y;
    const double mono3[4] = {x * x * x, x * x * y, x * y * y, y * y * y};
    const double mono4[5] = {x * x * x * x, x * x * x * y, x * x * y * y, x * y * y * y,
                             y * y * y * y};
    j.value = 0.5 * (a * x * x + 2 * b * x * y + c * y * y);
    for (int i = 0; i < 4; ++i) j.value += c3[i] * mono3[i];
    for (int i = 0; i < 5; ++i) j.value += c4[i] * mono4[i];

    j.grad = {a * x + b * y, b * x + c * y};
    j.grad.x += c3[0] * 3 * x * x + c3[1] * 2 * x * y + c3[2] * y * y;
    j.grad.y += c3[1] * x * x + c3[2] * 2 * x * y + c3[3] * 3 * y * y;
    j.grad.x += c4[0] * 4 * x * x * x + c4[1] * 3 * x * x * y + c4[2] * 2 * x * y * y +
                c4[3] * y * y * y;
    j.grad.y += c4[1] * x * x * x + c4[2] * 2 * x * x * y + c4[3] * 3 * x * y * y +
                c4[4] * 4 * y * y * y;

    j.hess = {a + c3[0] * 6 * x + c3[1] * 2 * y + c4[0] * 12 * x * x + c4[1] * 6 * x * y +
                  c4[2] * 2 * y * y,
              b + c3[1] * 2 * x + c3[2] * 2 * y + c4[1] * 3 * x * x + c4[2] * 4 * x * y +
                  c4[3] * 3 * y * y,
              c + c3[2] * 2 * x + c3[3] * 6 * y + c4[2] * 2 * x * x + c4[3] * 6 * x * y +
                  c4[4] * 12 * y * y};

    j.third.v = {6 * c3[0] + 24 * c4[0] * x + 6 * c4[1] * y,
                 2 * c3[1] + 6 * c4[1] * x + 4 * c4[2] * y,
                 2 * c3[2] + 4 * c4[2] * x + 6 * c4[3] * y,
                 6 * c3[3] + 6 * c4[3] * x + 24 * c4[4] * y};
    j.fourth.v = {24 * c4[0], 6 * c4[1], 4 * c4[2], 6 * c4[3], 24 * c4[4]};
    return j;
}

// pure quadratic jet: hess = H, higher derivatives zero
inline Jet4 quadratic_jet(const Vec2& p, const Sym2& H) {
    Jet4 j;
    j.location = p;
    j.value = 0.5 * (H.xx * p.x * p.x + 2 * H.xy * p.x * p.y + H.yy * p.y * p.y);
    j.grad = H.apply(p);
    j.hess = H;
    return j;
}

} // namespace oracles
