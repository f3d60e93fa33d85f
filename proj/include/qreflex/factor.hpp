#ifndef QREFLEX_FACTOR_HPP
#define QREFLEX_FACTOR_HPP

#include <algorithm>
#include <cmath>
#include <utility>

#include "qreflex/qmatrix.hpp"
#include "qreflex/reflection.hpp"

namespace qreflex {

/// Default rank / orthonormality tolerance.
inline constexpr double kOrthTol = 1e-10;

/// Matrix with orthonormal columns (as a right H-module): B* B = I_rank.
template <typename T>
struct OrthonormalBasis {
  QMatrix<T> matrix;
  Eigen::Index rank = 0;
};

/// Modified Gram-Schmidt over the columns of `m`, run twice per column.
///
/// Projection coefficients act on the right, r <- r - u (u* r), so the result
/// spans the column space of `m` as a right H-module. A column is dropped when
/// its residual is at most tol * max(1, largest column norm of m).
template <typename T>
OrthonormalBasis<T> mgs(const QMatrix<T>& m, T tol = T(kOrthTol)) {
  if (!(tol > 0)) throw DomainError("mgs: tolerance must be positive");
  const auto n = m.rows();
  T scale = 1;
  for (Eigen::Index j = 0; j < m.cols(); ++j) scale = std::max(scale, fro_norm(m.col(j)));
  const T cutoff = tol * scale;

  QMatrix<T> basis(n, std::min(n, m.cols()));
  Eigen::Index rank = 0;
  for (Eigen::Index j = 0; j < m.cols() && rank < n; ++j) {
    QMatrix<T> r = m.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index b = 0; b < rank; ++b) {
        Quaternion<T> coef;
        for (Eigen::Index i = 0; i < n; ++i) coef += basis(i, b).conj() * r(i, 0);
        for (Eigen::Index i = 0; i < n; ++i) r(i, 0) -= basis(i, b) * coef;
      }
    }
    const T norm = fro_norm(r);
    if (norm <= cutoff) continue;
    basis.col(rank) = r / norm;
    ++rank;
  }
  return {QMatrix<T>(basis.leftCols(rank)), rank};
}

/// Eigenbases of a generalized reflection: U1 = mgs(I + P) spans the +1
/// eigenspace, U2 = mgs(I - P) the -1 eigenspace, and [U1, U2] is unitary with
/// P = [U1, U2] diag(I, -I) [U1, U2]*.
template <typename T>
std::pair<OrthonormalBasis<T>, OrthonormalBasis<T>> reflection_eigenbasis(
    const QMatrix<T>& p, T tol = T(kOrthTol), T validate_tol = T(kStructuralTol)) {
  const auto check = check_reflection(p, validate_tol);
  if (!check.ok()) throw ValidationError("reflection_eigenbasis: P is " + check.reason());
  const QMatrix<T> eye = identity<T>(p.rows());
  auto plus = mgs<T>(eye + p, tol);
  auto minus = mgs<T>(eye - p, tol);
  if (plus.rank + minus.rank != p.rows())
    throw ValidationError("reflection_eigenbasis: eigenspace ranks " + std::to_string(plus.rank) +
                          " + " + std::to_string(minus.rank) + " do not add up to n = " +
                          std::to_string(p.rows()));
  return {std::move(plus), std::move(minus)};
}

namespace detail {

/// Lower-triangular L with real positive diagonal and H = L L*.
template <typename T>
QMatrix<T> cholesky(const QMatrix<T>& h) {
  require_square(h, "cholesky");
  const auto n = h.rows();
  QMatrix<T> l = QMatrix<T>::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    T d = h(j, j).w;
    for (Eigen::Index k = 0; k < j; ++k) d -= l(j, k).norm2();
    if (!(d > 0)) throw DomainError("cholesky: matrix is not positive definite");
    const T ljj = std::sqrt(d);
    l(j, j) = Quaternion<T>(ljj);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      Quaternion<T> s = h(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= l(i, k) * l(j, k).conj();
      l(i, j) = s / ljj;
    }
  }
  return l;
}

/// Solves (L L*) X = B by forward then backward substitution.
template <typename T>
QMatrix<T> cholesky_solve(const QMatrix<T>& l, QMatrix<T> b) {
  const auto n = l.rows();
  for (Eigen::Index c = 0; c < b.cols(); ++c) {
    for (Eigen::Index i = 0; i < n; ++i) {
      Quaternion<T> s = b(i, c);
      for (Eigen::Index k = 0; k < i; ++k) s -= l(i, k) * b(k, c);
      b(i, c) = s / l(i, i).w;
    }
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      Quaternion<T> s = b(i, c);
      for (Eigen::Index k = i + 1; k < n; ++k) s -= l(k, i).conj() * b(k, c);
      b(i, c) = s / l(i, i).w;
    }
  }
  return b;
}

}  // namespace detail

/// Moore-Penrose pseudoinverse.
///
/// Full-rank factorization A = F G with F = mgs(A) (so F* F = I) and G = F* A,
/// then A+ = G* (G G*)^{-1} F*, where the Hermitian positive definite G G* is
/// solved by quaternion Cholesky. The zero matrix maps to the zero n x m matrix.
template <typename T>
QMatrix<T> pinv(const QMatrix<T>& a, T tol = T(kOrthTol)) {
  if (!(tol > 0)) throw DomainError("pinv: tolerance must be positive");
  const auto f = mgs<T>(a, tol);
  if (f.rank == 0) return zeros<T>(a.cols(), a.rows());
  const QMatrix<T> fh = adjoint(f.matrix);
  const QMatrix<T> g = matmul(fh, a);
  const QMatrix<T> gh = adjoint(g);
  const QMatrix<T> l = detail::cholesky<T>(matmul(g, gh));
  return matmul(gh, detail::cholesky_solve<T>(l, fh));
}

/// R_X = I - X X+ (side rows(X)).
template <typename T>
QMatrix<T> right_annihilator(const QMatrix<T>& x, T tol = T(kOrthTol)) {
  return identity<T>(x.rows()) - matmul(x, pinv<T>(x, tol));
}

/// L_X = I - X+ X (side cols(X)).
template <typename T>
QMatrix<T> left_annihilator(const QMatrix<T>& x, T tol = T(kOrthTol)) {
  return identity<T>(x.cols()) - matmul(pinv<T>(x, tol), x);
}

/// Solution structure of A X = B for the unknown A.
template <typename T>
struct LeftSolveResult {
  bool consistent = false;
  T residual = 0;          // ||B X+ X - B||
  QMatrix<T> particular;   // B X+
  QMatrix<T> annihilator;  // R_X
};

/// A X = B is consistent iff B X+ X = B; then every solution is B X+ + W R_X.
template <typename T>
LeftSolveResult<T> solve_left(const QMatrix<T>& x, const QMatrix<T>& b, T tol = T(kStructuralTol),
                              T rank_tol = T(kOrthTol)) {
  if (b.cols() != x.cols())
    throw DimensionError("solve_left: B has " + std::to_string(b.cols()) + " columns, X has " +
                         std::to_string(x.cols()));
  const QMatrix<T> xp = pinv<T>(x, rank_tol);
  LeftSolveResult<T> out;
  out.particular = matmul(b, xp);
  out.annihilator = identity<T>(x.rows()) - matmul(x, xp);
  out.residual = fro_norm(matmul(out.particular, x) - b);
  out.consistent = out.residual <= tol * fro_norm(b);
  return out;
}

/// B X+ + W R_X for a free parameter W of shape rows(B) x rows(X).
template <typename T>
QMatrix<T> materialize(const LeftSolveResult<T>& r, const QMatrix<T>& w) {
  detail::require_same_shape(w, r.particular, "materialize");
  return r.particular + matmul(w, r.annihilator);
}

}  // namespace qreflex

#endif  // QREFLEX_FACTOR_HPP
