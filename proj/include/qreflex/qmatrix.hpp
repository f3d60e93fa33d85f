#ifndef QREFLEX_QMATRIX_HPP
#define QREFLEX_QMATRIX_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Core>

#include "qreflex/errors.hpp"
#include "qreflex/quaternion.hpp"

namespace qreflex {

/// Dense row-major quaternion matrix.
///
/// Eigen supplies storage, blocks and coefficient-wise expressions. Matrix
/// products must go through qreflex::matmul: Eigen's blocked GEMM evaluates
/// row-major destinations as (B^T A^T)^T, which swaps the factors of every
/// scalar product and is wrong over H. Likewise `.adjoint()` does not
/// conjugate a non-complex scalar type; use qreflex::adjoint.
template <typename T>
using QMatrix = Eigen::Matrix<Quaternion<T>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Dense row-major complex matrix (target of the symplectic embedding).
template <typename T>
using CMatrix = Eigen::Matrix<std::complex<T>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using QMatrixd = QMatrix<double>;
using CMatrixd = CMatrix<double>;

/// Real scalar type underlying a quaternion matrix expression.
template <typename Derived>
using real_of = typename Derived::Scalar::value_type;

namespace detail {

inline std::string shape_str(Eigen::Index r, Eigen::Index c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

template <typename A, typename B>
void require_same_shape(const A& a, const B& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(std::string(what) + ": shape mismatch " + shape_str(a.rows(), a.cols()) +
                         " vs " + shape_str(b.rows(), b.cols()));
}

template <typename A>
void require_square(const A& a, const char* what) {
  if (a.rows() != a.cols())
    throw DimensionError(std::string(what) + ": expected a square matrix, got " +
                         shape_str(a.rows(), a.cols()));
}

}  // namespace detail

template <typename T>
QMatrix<T> identity(Eigen::Index n) {
  return QMatrix<T>::Identity(n, n);
}

template <typename T>
QMatrix<T> zeros(Eigen::Index rows, Eigen::Index cols) {
  return QMatrix<T>::Zero(rows, cols);
}

/// C = A B with every scalar product taken as A(i,s) * B(s,j).
template <typename DA, typename DB>
QMatrix<real_of<DA>> matmul(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using T = real_of<DA>;
  if (a.cols() != b.rows())
    throw DimensionError("matmul: inner dimensions differ (" +
                         detail::shape_str(a.rows(), a.cols()) + " * " +
                         detail::shape_str(b.rows(), b.cols()) + ")");
  const QMatrix<T> lhs = a;
  const QMatrix<T> rhs = b;
  QMatrix<T> c = QMatrix<T>::Zero(lhs.rows(), rhs.cols());
  for (Eigen::Index i = 0; i < lhs.rows(); ++i) {
    for (Eigen::Index s = 0; s < lhs.cols(); ++s) {
      const Quaternion<T> ais = lhs(i, s);
      if (ais.is_zero()) continue;
      for (Eigen::Index j = 0; j < rhs.cols(); ++j) c(i, j) += ais * rhs(s, j);
    }
  }
  return c;
}

template <typename DA, typename DB, typename DC>
QMatrix<real_of<DA>> matmul(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b,
                            const Eigen::MatrixBase<DC>& c) {
  // Cheaper association first; both agree in exact arithmetic.
  const auto left_cost = a.rows() * a.cols() * b.cols() + a.rows() * b.cols() * c.cols();
  const auto right_cost = b.rows() * b.cols() * c.cols() + a.rows() * a.cols() * c.cols();
  return left_cost <= right_cost ? matmul(matmul(a, b), c) : matmul(a, matmul(b, c));
}

/// Conjugate transpose A*.
template <typename D>
QMatrix<real_of<D>> adjoint(const Eigen::MatrixBase<D>& a) {
  QMatrix<real_of<D>> out(a.cols(), a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(j, i) = a(i, j).conj();
  return out;
}

/// Frobenius inner product <A, B> = trace(B* A), as a full quaternion.
template <typename T>
Quaternion<T> inner(const QMatrix<T>& a, const QMatrix<T>& b) {
  detail::require_same_shape(a, b, "inner");
  // trace(B* A) = sum_{i,j} conj(B(i,j)) A(i,j)
  Quaternion<T> acc;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) acc += b(i, j).conj() * a(i, j);
  return acc;
}

template <typename D>
real_of<D> fro_norm2(const Eigen::MatrixBase<D>& a) {
  real_of<D> acc = 0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) acc += a(i, j).norm2();
  return acc;
}

/// Frobenius norm sqrt(re <A, A>).
template <typename D>
real_of<D> fro_norm(const Eigen::MatrixBase<D>& a) {
  return std::sqrt(fro_norm2(a));
}

/// ||A - B||_F
template <typename T>
T fro_distance(const QMatrix<T>& a, const QMatrix<T>& b) {
  detail::require_same_shape(a, b, "fro_distance");
  return fro_norm(a - b);
}

template <typename T>
bool is_finite(const QMatrix<T>& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_finite()) return false;
  return true;
}

/// q A (left scalar multiplication).
template <typename T>
QMatrix<T> left_scale(const Quaternion<T>& q, const QMatrix<T>& a) {
  return a.unaryExpr([q](const Quaternion<T>& v) { return q * v; });
}

/// A q (right scalar multiplication).
template <typename T>
QMatrix<T> right_scale(const QMatrix<T>& a, const Quaternion<T>& q) {
  return a.unaryExpr([q](const Quaternion<T>& v) { return v * q; });
}

/// n x n backward identity: ones on the southwest-northeast diagonal.
template <typename T>
QMatrix<T> backward_identity(Eigen::Index n) {
  if (n < 1) throw DimensionError("backward_identity: n must be at least 1");
  QMatrix<T> v = QMatrix<T>::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) v(i, n - 1 - i) = Quaternion<T>(1);
  return v;
}

/// diag(d) for a sequence of quaternions.
template <typename T, typename Range>
QMatrix<T> diagonal(const Range& d) {
  const auto n = static_cast<Eigen::Index>(std::size(d));
  QMatrix<T> out = QMatrix<T>::Zero(n, n);
  Eigen::Index i = 0;
  for (const auto& v : d) {
    out(i, i) = Quaternion<T>(v);
    ++i;
  }
  return out;
}

/// [A, B]
template <typename T>
QMatrix<T> hcat(const QMatrix<T>& a, const QMatrix<T>& b) {
  if (a.rows() != b.rows() && a.size() != 0 && b.size() != 0)
    throw DimensionError("hcat: row counts differ");
  const Eigen::Index rows = a.cols() > 0 ? a.rows() : b.rows();
  QMatrix<T> out(rows, a.cols() + b.cols());
  if (a.cols() > 0) out.leftCols(a.cols()) = a;
  if (b.cols() > 0) out.rightCols(b.cols()) = b;
  return out;
}

/// Real-valued splitting A = A1 + A2 j with A1, A2 complex.
template <typename T>
void complex_parts(const QMatrix<T>& a, CMatrix<T>& a1, CMatrix<T>& a2) {
  a1.resize(a.rows(), a.cols());
  a2.resize(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const auto& q = a(i, j);
      a1(i, j) = {q.w, q.x};
      a2(i, j) = {q.y, q.z};
    }
}

/// Complex adjoint representation [[A1, A2], [-conj(A2), conj(A1)]] of
/// A = A1 + A2 j. It is an injective *-homomorphism H^{m x n} -> C^{2m x 2n}.
template <typename T>
CMatrix<T> chi_embed(const QMatrix<T>& a) {
  CMatrix<T> a1, a2;
  complex_parts(a, a1, a2);
  const auto m = a.rows(), n = a.cols();
  CMatrix<T> out(2 * m, 2 * n);
  out.topLeftCorner(m, n) = a1;
  out.topRightCorner(m, n) = a2;
  out.bottomLeftCorner(m, n) = -a2.conjugate();
  out.bottomRightCorner(m, n) = a1.conjugate();
  return out;
}

/// Inverse of chi_embed. Throws StructureError when the block symmetry is
/// violated by more than `tol` relative to max(1, ||M||).
template <typename T>
QMatrix<T> chi_extract(const CMatrix<T>& mat, T tol = T(1e-10)) {
  if (mat.rows() % 2 != 0 || mat.cols() % 2 != 0)
    throw StructureError("chi_extract: dimensions must be even, got " +
                         detail::shape_str(mat.rows(), mat.cols()));
  const auto m = mat.rows() / 2, n = mat.cols() / 2;
  const CMatrix<T> a1 = mat.topLeftCorner(m, n);
  const CMatrix<T> a2 = mat.topRightCorner(m, n);
  const T defect = std::sqrt((mat.bottomRightCorner(m, n) - a1.conjugate()).squaredNorm() +
                             (mat.bottomLeftCorner(m, n) + a2.conjugate()).squaredNorm());
  if (defect > tol * std::max(T(1), mat.norm()))
    throw StructureError("chi_extract: matrix lacks the symplectic block symmetry");
  QMatrix<T> out(m, n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out(i, j) = {a1(i, j).real(), a1(i, j).imag(), a2(i, j).real(), a2(i, j).imag()};
  return out;
}

}  // namespace qreflex

#endif  // QREFLEX_QMATRIX_HPP
