#pragma once

// Group inverse, Drazin inverse and spectral idempotent of square matrices.
//
// Two independent group-inverse routes are provided:
//   group_inverse         full-rank factorization a = F G, a^# = F (GF)^-2 G
//   oracle_group_inverse  a (a^3)^+ a, accepted only if it passes the axioms
// They share nothing but the core primitives and verify_axioms, so each can
// serve as the other's reference.

#include "ginvkit/core.hpp"

#include <cmath>
#include <optional>

namespace ginv {

/// Residuals of the three group-inverse axioms for a candidate x of a.
struct AxiomCheck {
  double xax_minus_x = 0;  // ||x a x - x||_F
  double ax_minus_xa = 0;  // ||a x - x a||_F
  double a2x_minus_a = 0;  // ||a^2 x - a||_F
  bool verdict = false;
};

template <typename Scalar>
struct GinvResult {
  bool exists = false;
  std::optional<Matrix<Scalar>> inverse;
  Index rank_a = 0;
  Index rank_a2 = 0;
  // Present whenever a candidate inverse was formed.
  std::optional<AxiomCheck> residuals;
  // Ranks agreed but the candidate failed the axioms (or GF was singular);
  // the verdict is then reported as non-existence.
  bool rank_residual_disagreement = false;
};

template <typename Scalar>
struct DrazinResult {
  Matrix<Scalar> inverse;
  int index = 0;
  Matrix<Scalar> spectral_idempotent;
};

template <typename DerivedA, typename DerivedX>
AxiomCheck verify_axioms(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedX>& x,
                         const Tolerance& tol = {}) {
  require_square(a);
  require_same_shape(a, x, "verify_axioms");
  using M = Matrix<typename DerivedA::Scalar>;
  const M am = a;
  const M xm = x;
  const M ax = am * xm;
  const M xa = xm * am;

  AxiomCheck c;
  c.xax_minus_x = (xm * ax - xm).norm();
  c.ax_minus_xa = (ax - xa).norm();
  c.a2x_minus_a = (am * ax - am).norm();

  const double na = am.norm();
  const double nx = xm.norm();
  c.verdict = is_negligible_norm(c.xax_minus_x, nx * nx * na, tol) &&
              is_negligible_norm(c.ax_minus_xa, na * nx, tol) &&
              is_negligible_norm(c.a2x_minus_a, na * na * nx, tol);
  return c;
}

/// Group inverse via full-rank factorization. Existence is decided by
/// rank(a) == rank(a^2) and then confirmed by the axiom residuals.
template <typename Derived>
GinvResult<typename Derived::Scalar> group_inverse(const Eigen::MatrixBase<Derived>& a,
                                                   const Tolerance& tol = {}) {
  using Scalar = typename Derived::Scalar;
  using M = Matrix<Scalar>;
  require_square(a);

  const M am = a;
  const Index n = am.rows();
  GinvResult<Scalar> res;
  const double na = spectral_norm(am);
  res.rank_a = mat_rank(am, tol);
  res.rank_a2 = mat_rank((am * am).eval(), tol, na * na);
  if (res.rank_a != res.rank_a2) return res;

  const Index r = res.rank_a;
  M x;
  if (r == 0) {
    x = M::Zero(n, n);
  } else {
    // F spans range(a) with orthonormal columns, so F^+ = F^H and G = F^H a.
    Eigen::ColPivHouseholderQR<M> qr(am);
    const M f = qr.householderQ() * M::Identity(n, r);
    const M g = f.adjoint() * am;
    const M gf = g * f;
    if (mat_rank(gf, tol, na) != r) {
      res.rank_residual_disagreement = true;
      return res;
    }
    const M gf_inv = gf.fullPivLu().inverse();
    x = f * (gf_inv * gf_inv) * g;
  }

  res.residuals = verify_axioms(am, x, tol);
  if (!res.residuals->verdict) {
    res.rank_residual_disagreement = true;
    return res;
  }
  res.exists = true;
  res.inverse = std::move(x);
  return res;
}

/// Reference group inverse a (a^3)^+ a; existence is declared iff the
/// candidate satisfies the axioms.
template <typename Derived>
GinvResult<typename Derived::Scalar> oracle_group_inverse(const Eigen::MatrixBase<Derived>& a,
                                                          const Tolerance& tol = {}) {
  using Scalar = typename Derived::Scalar;
  using M = Matrix<Scalar>;
  require_square(a);

  const M am = a;
  const M a2 = am * am;
  GinvResult<Scalar> res;
  const double na = spectral_norm(am);
  res.rank_a = mat_rank(am, tol);
  res.rank_a2 = mat_rank(a2, tol, na * na);

  M x = am * mat_pinv((a2 * am).eval(), tol, na * na * na) * am;
  res.residuals = verify_axioms(am, x, tol);
  res.exists = res.residuals->verdict;
  res.rank_residual_disagreement = res.exists != (res.rank_a == res.rank_a2);
  if (res.exists) res.inverse = std::move(x);
  return res;
}

/// Smallest k with rank(a^k) == rank(a^{k+1}); at most the dimension.
template <typename Derived>
int drazin_index(const Eigen::MatrixBase<Derived>& a, const Tolerance& tol = {}) {
  using M = Matrix<typename Derived::Scalar>;
  require_square(a);
  const M am = a;
  const Index n = am.rows();
  const double na = spectral_norm(am);
  Index prev_rank = n;
  M pk = am;
  double scale = na;
  for (int k = 0; k < n; ++k) {
    const Index rk = mat_rank(pk, tol, scale);
    if (rk == prev_rank) return k;
    prev_rank = rk;
    pk = pk * am;
    scale *= na;
  }
  return static_cast<int>(n);
}

/// Drazin inverse a^D = a^k (a^{2k+1})^+ a^k with k the index.
template <typename Derived>
DrazinResult<typename Derived::Scalar> drazin_inverse(const Eigen::MatrixBase<Derived>& a,
                                                      const Tolerance& tol = {}) {
  using Scalar = typename Derived::Scalar;
  using M = Matrix<Scalar>;
  require_square(a);

  const M am = a;
  DrazinResult<Scalar> res;
  res.index = drazin_index(am, tol);
  const M ak = power(am, res.index);
  const M a2k1 = ak * ak * am;
  res.inverse = ak * mat_pinv(a2k1, tol, std::pow(spectral_norm(am), 2 * res.index + 1)) * ak;
  res.spectral_idempotent = M::Identity(am.rows(), am.cols()) - am * res.inverse;
  return res;
}

/// a^pi = I - a a^D.
template <typename Derived>
Matrix<typename Derived::Scalar> spectral_idempotent(const Eigen::MatrixBase<Derived>& a,
                                                     const Tolerance& tol = {}) {
  return drazin_inverse(a, tol).spectral_idempotent;
}

/// (xy)^D through the reversed product: x ((yx)^D)^2 y.
template <typename DerivedX, typename DerivedY>
Matrix<typename DerivedX::Scalar> cline_drazin(const Eigen::MatrixBase<DerivedX>& x,
                                               const Eigen::MatrixBase<DerivedY>& y,
                                               const Tolerance& tol = {}) {
  using M = Matrix<typename DerivedX::Scalar>;
  if (x.cols() != y.rows() || y.cols() != x.rows()) {
    throw DimensionError("cline_drazin", shape_of(x), shape_of(y));
  }
  const M yx = y * x;
  const M yx_d = drazin_inverse(yx, tol).inverse;
  return x * (yx_d * yx_d) * y;
}

}  // namespace ginv
