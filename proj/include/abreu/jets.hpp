#pragma once

#include "abreu/geom.hpp"

namespace abreu {

/// Value and all partial derivatives through order 4 at one point.
struct Jet4 {
    Vec2 location;
    double value = 0.0;
    Vec2 grad;
    Sym2 hess;
    Sym3 third;
    Sym4 fourth;

    /// Adds the affine function c + dot(g, x). Hessian and higher entries
    /// are untouched (bitwise).
    void add_affine(double c, const Vec2& g) {
        value += c + dot(g, location);
        grad += g;
    }

    /// Jet of u + s*w at the same location.
    Jet4 fma(double s, const Jet4& w) const {
        Jet4 r = *this;
        r.value += s * w.value;
        r.grad += w.grad * s;
        r.hess = r.hess + w.hess * s;
        r.third = r.third + w.third * s;
        r.fourth = r.fourth + w.fourth * s;
        return r;
    }
};

/// Jet of the rescaled function u*(x) = u(sqrt(t) * T x) / t at the
/// preimage point, given the jet of u at the mapped point. T is applied
/// as (T x)^a = T(a,i) x^i.
inline Jet4 rescale_jet(const Jet4& jet, double t, const Mat2& T, const Vec2& preimage) {
    const double rt = std::sqrt(t);
    Jet4 r;
    r.location = preimage;
    r.value = jet.value / t;
    for (int i = 0; i < 2; ++i) {
        double s = 0.0;
        for (int a = 0; a < 2; ++a) s += T(a, i) * jet.grad[a];
        r.grad[i] = s / rt;
    }
    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j) {
            double s = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) s += T(a, i) * T(b, j) * jet.hess(a, b);
            r.hess.add(i, j, s);
        }
    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j)
            for (int k = j; k < 2; ++k) {
                double s = 0.0;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        for (int c = 0; c < 2; ++c)
                            s += T(a, i) * T(b, j) * T(c, k) * jet.third(a, b, c);
                r.third.add(i, j, k, rt * s);
            }
    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j)
            for (int k = j; k < 2; ++k)
                for (int l = k; l < 2; ++l) {
                    double s = 0.0;
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b)
                            for (int c = 0; c < 2; ++c)
                                for (int d = 0; d < 2; ++d)
                                    s += T(a, i) * T(b, j) * T(c, k) * T(d, l) *
                                         jet.fourth(a, b, c, d);
                    r.fourth.add(i, j, k, l, t * s);
                }
    return r;
}

/// Abstract source of 4-jets; lets downstream geometry run on either a
/// potential or a rescaled view of one.
struct JetField {
    virtual ~JetField() = default;
    virtual Jet4 jet(const Vec2& p) const = 0;
    /// Value-only evaluation, usable arbitrarily close to the domain edge.
    virtual double value(const Vec2& p) const = 0;
    /// Largest r with p + r*dir inside the evaluation domain.
    virtual double ray_exit(const Vec2& p, const Vec2& dir) const = 0;
};

} // namespace abreu
