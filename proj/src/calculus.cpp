#include "abreu/calculus.hpp"

#include "abreu/errors.hpp"

#include <cmath>
#include <string>

namespace abreu {

PointState hessian_package(const Jet4& jet) {
    PointState st;
    st.jet = jet;
    const Sym2& h = jet.hess;
    if (!h.positive_definite())
        throw domain_error("Hessian not positive definite at (" +
                           std::to_string(jet.location.x) + ", " +
                           std::to_string(jet.location.y) + ")");
    st.det_hess = h.det();
    st.hess_inv = h.inverse();
    st.cofactor = h.cofactor();
    st.L = std::log(st.det_hess);
    st.det_inv = 1.0 / st.det_hess;

    // Derivatives of the inverse through the cofactor representation
    // u^{jk} = U^{jk}/det. In two dimensions the cofactor matrix is linear
    // in the Hessian, so its derivatives are plain jet entries and the
    // quotient rule avoids the cancellation that the triple-product form
    // -u^{ja} u_{abi} u^{bk} suffers close to a face.
    auto cof = [&](int a, int b) { return st.cofactor(a, b); };
    auto cof1 = [&](int a, int b, int i) {
        if (a == 0 && b == 0) return jet.third(1, 1, i);
        if (a == 1 && b == 1) return jet.third(0, 0, i);
        return -jet.third(0, 1, i);
    };
    auto cof2 = [&](int a, int b, int i, int l) {
        if (a == 0 && b == 0) return jet.fourth(1, 1, i, l);
        if (a == 1 && b == 1) return jet.fourth(0, 0, i, l);
        return -jet.fourth(0, 1, i, l);
    };
    const double det = st.det_hess;
    double det1[2];
    for (int i = 0; i < 2; ++i) {
        double s = 0.0;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) s += cof(a, b) * jet.third(a, b, i);
        det1[i] = s;
    }
    double det2[2][2];
    for (int i = 0; i < 2; ++i)
        for (int l = 0; l < 2; ++l) {
            double s = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    s += cof1(a, b, l) * jet.third(a, b, i) +
                         cof(a, b) * jet.fourth(a, b, i, l);
            det2[i][l] = s;
        }

    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                st.d1[i][j][k] = cof1(j, k, i) / det - cof(j, k) * det1[i] / (det * det);

    for (int i = 0; i < 2; ++i)
        for (int l = 0; l < 2; ++l)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    st.d2[i][l][j][k] =
                        cof2(j, k, i, l) / det -
                        (cof1(j, k, i) * det1[l] + cof1(j, k, l) * det1[i] +
                         cof(j, k) * det2[i][l]) /
                            (det * det) +
                        2.0 * cof(j, k) * det1[i] * det1[l] / (det * det * det);

    for (int j = 0; j < 2; ++j) {
        double s = 0.0;
        for (int i = 0; i < 2; ++i) s += st.d1[i][i][j];
        st.v[j] = -s;
    }

    double s1 = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) s1 += st.d2[i][j][i][j];
    st.S = -s1;
    return st;
}

Vec2 log_det_gradient(const PointState& st) {
    Vec2 g;
    for (int i = 0; i < 2; ++i) {
        double s = 0.0;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) s += st.hess_inv(a, b) * st.jet.third(a, b, i);
        g[i] = s;
    }
    return g;
}

SForms abreu_S_forms(const PointState& st) {
    SForms f{};
    f.S1 = st.S;

    // route through L = log det: S = u^{ij}(L_ij - L_i L_j)
    const Vec2 Li = log_det_gradient(st);
    double Lij[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            double s = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    s += st.d1[j][a][b] * st.jet.third(a, b, i) +
                         st.hess_inv(a, b) * st.jet.fourth(a, b, i, j);
            Lij[i][j] = s;
        }
    double s4 = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            s4 += st.hess_inv(i, j) * (Lij[i][j] - Li[i] * Li[j]);
    f.S4 = s4;

    // cofactor route: S = -U^{ij} F_ij with F = 1/det, using only
    // determinant derivatives (no inverse-Hessian derivative arrays)
    const Sym2& U = st.cofactor;
    const Jet4& jet = st.jet;
    double det_i[2];
    for (int i = 0; i < 2; ++i) {
        double s = 0.0;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) s += U(a, b) * jet.third(a, b, i);
        det_i[i] = s;
    }
    auto dU = [&](int a, int b, int j) {
        // cofactor of a 2x2 symmetric matrix: swap diagonal, negate off-diagonal
        if (a == 0 && b == 0) return jet.third(1, 1, j);
        if (a == 1 && b == 1) return jet.third(0, 0, j);
        return -jet.third(0, 1, j);
    };
    const double det = st.det_hess;
    double s5 = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            double det_ij = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    det_ij += dU(a, b, j) * jet.third(a, b, i) +
                              U(a, b) * jet.fourth(a, b, i, j);
            const double F_ij =
                -det_ij / (det * det) + 2.0 * det_i[i] * det_i[j] / (det * det * det);
            s5 += U(i, j) * F_ij;
        }
    f.S5 = -s5;

    f.max_dev = std::max({std::abs(f.S1 - f.S4), std::abs(f.S1 - f.S5),
                          std::abs(f.S4 - f.S5)});
    return f;
}

VectorFields vector_fields(const PointState& st, double A, const Vec2& origin) {
    VectorFields out;
    out.v = st.v;
    const Vec2 r = st.jet.location - origin;
    out.w = st.v - r * (0.5 * A);
    out.h = st.jet.value - dot(st.jet.grad, r);
    // h_i = -u_{ki} r^k, so u^{ij} h_i + r^j vanishes identically
    Vec2 hi;
    for (int i = 0; i < 2; ++i) hi[i] = -(st.jet.hess(0, i) * r.x + st.jet.hess(1, i) * r.y);
    double res = 0.0;
    for (int j = 0; j < 2; ++j) {
        double s = 0.0;
        for (int i = 0; i < 2; ++i) s += st.hess_inv(i, j) * hi[i];
        res = std::max(res, std::abs(s + r[j]));
    }
    out.h_grad_residual = res;
    return out;
}

CurvaturePack curvature_tensors(const PointState& st) {
    CurvaturePack p{};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) p.F_mixed[a][b][k][l] = -st.d2[k][l][a][b];

    const Sym2& h = st.jet.hess;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) {
                    double s = 0.0;
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b)
                            s += h(i, a) * h(j, b) * p.F_mixed[a][b][k][l];
                    p.F_lower[i][j][k][l] = s;
                }

    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
            double s = 0.0;
            for (int j = 0; j < 2; ++j) s += p.F_mixed[i][j][k][j];
            p.G_mixed[i][k] = s;
        }

    p.S = p.G_mixed[0][0] + p.G_mixed[1][1];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            p.normG2 += p.G_mixed[i][j] * p.G_mixed[j][i];
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    p.normF2 += p.F_mixed[i][j][k][l] * p.F_mixed[k][l][i][j];
        }
    return p;
}

std::array<std::array<double, 4>, 4> guillemin_metric(const PointState& st) {
    std::array<std::array<double, 4>, 4> g{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            g[i][j] = st.jet.hess(i, j);
            g[i + 2][j + 2] = st.hess_inv(i, j);
        }
    return g;
}

VariationFields variation_ZW(const PointState& st, const Jet4& eps) {
    const Sym2& hi = st.hess_inv;
    // E^{ij} = -u^{ia} eps_{ab} u^{bj}
    double E1[2][2][2]; // E1[k][i][j] = d_k E^{ij}
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                double s = 0.0;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        s += st.d1[k][i][a] * eps.hess(a, b) * hi(b, j) +
                             hi(i, a) * eps.third(a, b, k) * hi(b, j) +
                             hi(i, a) * eps.hess(a, b) * st.d1[k][b][j];
                E1[k][i][j] = -s;
            }

    const CurvaturePack cp = curvature_tensors(st);
    VariationFields out;
    for (int i = 0; i < 2; ++i) {
        double z = 0.0;
        for (int j = 0; j < 2; ++j)
            for (int l = 0; l < 2; ++l)
                for (int k = 0; k < 2; ++k) z -= E1[k][j][l] * cp.F_mixed[i][k][j][l];
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) z += E1[k][i][j] * cp.G_mixed[k][j];
        out.Z[i] = z;

        double w = 0.0;
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) w -= E1[j][j][k] * cp.G_mixed[i][k];
        for (int j = 0; j < 2; ++j) w += cp.S * E1[j][j][i];
        out.W[i] = w;
    }
    return out;
}

} // namespace abreu
