#pragma once

// Dense matrix primitives shared by every other part of ginvkit: the matrix
// aliases, the numerical tolerance policy, checked arithmetic, SVD-based rank
// and pseudoinverse, and the scaled "is zero" test.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace ginv {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Complex = std::complex<double>;
using CMatrix = Matrix<Complex>;

/// Numerical policy for zero tests and rank decisions.
///
/// A residual r with reference scale s counts as zero when
/// ||r||_F <= zero_abs + zero_rel * max(1, s). A singular value counts
/// towards the rank when it exceeds rank_rel * max(rows, cols) * sigma_max, where
/// sigma_max is floored by the factor scale for computed products.
struct Tolerance {
  double zero_rel = 1e-10;
  double zero_abs = 1e-12;
  double rank_rel = 1e-11;

  bool valid() const { return zero_rel >= 0 && zero_abs >= 0 && rank_rel >= 0; }

  /// Tolerance with zero_rel = rel and zero_abs = rel / 100.
  static Tolerance with_zero_rel(double rel) {
    Tolerance t;
    t.zero_rel = rel;
    t.zero_abs = rel / 100.0;
    return t;
  }
};

struct Shape {
  Index rows = 0;
  Index cols = 0;
};

inline std::string to_string(Shape s) {
  return std::to_string(s.rows) + "x" + std::to_string(s.cols);
}

template <typename Derived>
Shape shape_of(const Eigen::EigenBase<Derived>& a) {
  return {a.rows(), a.cols()};
}

class DimensionError : public std::invalid_argument {
 public:
  DimensionError(const std::string& what, Shape lhs, Shape rhs)
      : std::invalid_argument(what + ": " + to_string(lhs) + " vs " + to_string(rhs)),
        lhs_(lhs),
        rhs_(rhs) {}

  Shape lhs() const { return lhs_; }
  Shape rhs() const { return rhs_; }

 private:
  Shape lhs_;
  Shape rhs_;
};

class NotSquareError : public DimensionError {
 public:
  explicit NotSquareError(Shape s) : DimensionError("matrix is not square", s, s) {}
};

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a) {
  if (a.rows() != a.cols()) throw NotSquareError(shape_of(a));
}

template <typename DerivedA, typename DerivedB>
void require_same_shape(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                        const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(what, shape_of(a), shape_of(b));
  }
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& a) {
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      const auto v = a(i, j);
      if (!std::isfinite(std::real(v)) || !std::isfinite(std::imag(v))) return false;
    }
  }
  return true;
}

// Checked ring operations. Downstream code validates shapes once at its
// entry point and then uses Eigen expressions directly.

template <typename DerivedA, typename DerivedB>
auto add(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  require_same_shape(a, b, "add");
  return (a + b).eval();
}

template <typename DerivedA, typename DerivedB>
auto sub(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  require_same_shape(a, b, "sub");
  return (a - b).eval();
}

template <typename DerivedA, typename DerivedB>
auto mul(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.cols() != b.rows()) throw DimensionError("mul", shape_of(a), shape_of(b));
  return (a * b).eval();
}

template <typename Derived>
auto scale(const Eigen::MatrixBase<Derived>& a, typename Derived::Scalar c) {
  return (c * a).eval();
}

template <typename Derived>
Matrix<typename Derived::Scalar> identity_like(const Eigen::MatrixBase<Derived>& a) {
  return Matrix<typename Derived::Scalar>::Identity(a.rows(), a.cols());
}

/// Integer power by repeated multiplication; power(a, 0) is the identity.
template <typename Derived>
Matrix<typename Derived::Scalar> power(const Eigen::MatrixBase<Derived>& a, int k) {
  require_square(a);
  Matrix<typename Derived::Scalar> result = identity_like(a);
  for (int i = 0; i < k; ++i) result = result * a;
  return result;
}

template <typename Derived>
Eigen::Matrix<typename Eigen::NumTraits<typename Derived::Scalar>::Real, Eigen::Dynamic, 1>
singular_values(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (a.size() == 0) return Eigen::Matrix<Real, Eigen::Dynamic, 1>();
  Eigen::JacobiSVD<Matrix<typename Derived::Scalar>> svd(a.eval());
  return svd.singularValues();
}

template <typename Derived>
double spectral_norm(const Eigen::MatrixBase<Derived>& a) {
  const auto sigma = singular_values(a);
  return sigma.size() == 0 ? 0.0 : static_cast<double>(sigma(0));
}

namespace detail {

template <typename Vector>
Index count_above_cutoff(const Vector& sigma, Index rows, Index cols, const Tolerance& tol,
                         double scale) {
  const double reference = sigma.size() == 0 ? 0.0 : std::max<double>(sigma(0), scale);
  if (!(reference > 0)) return 0;
  const double cutoff = tol.rank_rel * static_cast<double>(std::max(rows, cols)) * reference;
  Index r = 0;
  for (Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff) ++r;
  }
  return r;
}

}  // namespace detail

/// `scale` is the magnitude of the factors a computed product was formed
/// from, e.g. ||a||_2^k for a^k. Rounding error in the product is relative to
/// it, so the cutoff uses max(sigma_max, scale).
template <typename Derived>
Index mat_rank(const Eigen::MatrixBase<Derived>& a, const Tolerance& tol = {}, double scale = 0) {
  return detail::count_above_cutoff(singular_values(a), a.rows(), a.cols(), tol, scale);
}

/// Moore-Penrose pseudoinverse from a thin SVD, dropping singular values at
/// or below the rank cutoff.
template <typename Derived>
Matrix<typename Derived::Scalar> mat_pinv(const Eigen::MatrixBase<Derived>& a,
                                          const Tolerance& tol = {}, double scale = 0) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> out = Matrix<Scalar>::Zero(a.cols(), a.rows());
  if (a.size() == 0) return out;
  Eigen::JacobiSVD<Matrix<Scalar>> svd(a.eval(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const Index r = detail::count_above_cutoff(sigma, a.rows(), a.cols(), tol, scale);
  for (Index i = 0; i < r; ++i) {
    out.noalias() += (svd.matrixV().col(i) / sigma(i)) * svd.matrixU().col(i).adjoint();
  }
  return out;
}

inline bool is_negligible_norm(double residual_norm, double scale, const Tolerance& tol) {
  return residual_norm <= tol.zero_abs + tol.zero_rel * std::max(1.0, scale);
}

/// True iff ||r||_F <= zero_abs + zero_rel * max(1, scale). Callers pass the
/// product of the Frobenius norms of the factors that formed r.
template <typename Derived>
bool is_negligible(const Eigen::MatrixBase<Derived>& r, double scale, const Tolerance& tol = {}) {
  if (scale < 0) throw std::invalid_argument("is_negligible: negative scale");
  return is_negligible_norm(r.norm(), scale, tol);
}

/// Relative distance ||x - y||_F / max(1, ||y||_F).
template <typename DerivedX, typename DerivedY>
double relative_gap(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y) {
  require_same_shape(x, y, "relative_gap");
  return (x - y).norm() / std::max(1.0, static_cast<double>(y.norm()));
}

}  // namespace ginv
