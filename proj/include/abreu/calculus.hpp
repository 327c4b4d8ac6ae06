#pragma once

#include "abreu/geom.hpp"
#include "abreu/jets.hpp"

#include <array>

namespace abreu {

/// Everything derived pointwise from a 4-jet with positive-definite
/// Hessian: the inverse u^{ij}, its first and second derivatives, the
/// cofactor matrix, log-determinant, the divergence field v and the
/// scalar S. All contractions are explicit sums over {0,1}.
struct PointState {
    Jet4 jet;
    Sym2 hess_inv;       ///< u^{ij}
    Sym2 cofactor;       ///< U^{ij} = det * u^{ij}
    double det_hess = 0; ///< det(u_ij)
    double L = 0;        ///< log det
    double det_inv = 0;  ///< exp(-L)
    double d1[2][2][2];  ///< d1[i][j][k] = d_i u^{jk}
    double d2[2][2][2][2]; ///< d2[i][l][j][k] = d_i d_l u^{jk}
    Vec2 v;              ///< v^j = -d_i u^{ij}
    double S = 0;        ///< -d_i d_j u^{ij}
};

/// Throws domain_error (with the location in the message) if the Hessian
/// is not positive definite.
PointState hessian_package(const Jet4& jet);

/// The three independently computed routes to S: the double divergence of
/// the inverse Hessian, the log-determinant form u^{ij}(L_ij - L_i L_j),
/// and the cofactor form -Q(exp(-L)).
struct SForms {
    double S1, S4, S5;
    double max_dev; ///< max pairwise absolute deviation
};
SForms abreu_S_forms(const PointState& st);

/// v, the divergence-free field w = v - (A/2)(x - origin), the function
/// h = u - u_k (x - origin)^k and the residual of u^{ij} h_i + (x-origin)^j.
struct VectorFields {
    Vec2 v;
    Vec2 w;
    double h;
    double h_grad_residual;
};
VectorFields vector_fields(const PointState& st, double A, const Vec2& origin);

/// Fourth-order curvature data: F^{ab}_{kl} = -d_k d_l u^{ab}, its
/// lowering by the Hessian metric, the contraction G and the square norms.
struct CurvaturePack {
    double F_mixed[2][2][2][2];  ///< F^{ab}_{kl}, upper pair first
    double F_lower[2][2][2][2];  ///< F_{ijkl}
    double G_mixed[2][2];        ///< G^i_k = F^{ij}_{kj}
    double normF2 = 0;           ///< F^{ij}_{kl} F^{kl}_{ij}
    double normG2 = 0;           ///< G^i_j G^j_i
    double S = 0;                ///< trace of G
    double normF() const { return std::sqrt(normF2); }
    double normG() const { return std::sqrt(normG2); }
};
CurvaturePack curvature_tensors(const PointState& st);

/// Block metric [hess, 0; 0, hess_inv] on the (x, eta) slice; determinant 1.
std::array<std::array<double, 4>, 4> guillemin_metric(const PointState& st);

/// First variation fields of the curvature norms under u -> u + t*eps:
/// d/dt (|F|^2 - |G|^2) = 2 div Z and d/dt (|G|^2 - S^2) = 2 div W at t=0.
/// eps supplies derivatives through order 3 (its fourth entries are unused).
struct VariationFields {
    Vec2 Z;
    Vec2 W;
};
VariationFields variation_ZW(const PointState& st, const Jet4& eps);

/// L_i = u^{ab} u_{abi}, evaluated from the state.
Vec2 log_det_gradient(const PointState& st);

} // namespace abreu
