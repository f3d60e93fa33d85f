#ifndef QREFLEX_TESTS_HELPERS_HPP
#define QREFLEX_TESTS_HELPERS_HPP

#include <initializer_list>

#include "qreflex/qreflex.hpp"

namespace qreflex::test {

using Q = Quaternion<double>;
inline const Q I = Q::i();
inline const Q J = Q::j();
inline const Q K = Q::k();

/// Row-major literal: mat({{a, b}, {c, d}}).
inline QMatrixd mat(std::initializer_list<std::initializer_list<Q>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r ? static_cast<Eigen::Index>(rows.begin()->size()) : 0;
  QMatrixd a(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const auto& v : row) a(i, j++) = v;
    ++i;
  }
  return a;
}

inline QMatrixd col(std::initializer_list<Q> v) {
  QMatrixd a(static_cast<Eigen::Index>(v.size()), 1);
  Eigen::Index i = 0;
  for (const auto& x : v) a(i++, 0) = x;
  return a;
}

inline QMatrixd diag(std::initializer_list<Q> v) { return diagonal<double>(std::vector<Q>(v)); }

/// Random unitary n x n.
inline QMatrixd random_unitary(Rng& rng, Eigen::Index n) {
  return mgs<double>(rng.matrix(n, n)).matrix;
}

/// W diag(I_r, -I_{n-r}) W* for a random unitary W.
inline QMatrixd random_reflection(Rng& rng, Eigen::Index n, Eigen::Index r) {
  const QMatrixd w = random_unitary(rng, n);
  const QMatrixd plus = w.leftCols(r), minus = w.rightCols(n - r);
  return matmul(plus, adjoint(plus)) - matmul(minus, adjoint(minus));
}

/// Random rank-deficient m x n matrix of rank at most r, entries of order `scale`.
inline QMatrixd random_low_rank(Rng& rng, Eigen::Index m, Eigen::Index n, Eigen::Index r) {
  if (r == 0) return zeros<double>(m, n);
  return matmul(rng.matrix(m, r), rng.matrix(r, n));
}

/// Reference product by a plain triple loop, entries multiplied left to right.
inline QMatrixd naive_product(const QMatrixd& a, const QMatrixd& b) {
  QMatrixd c = zeros<double>(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      for (Eigen::Index s = 0; s < a.cols(); ++s) c(i, j) += a(i, s) * b(s, j);
  return c;
}

/// Random structured solve parameters of the shapes a general solution expects.
inline std::pair<QMatrixd, QMatrixd> random_parameters(Rng& rng, const GeneralSolution<double>& sol,
                                                       double scale = 1.0) {
  return {QMatrixd(rng.matrix(sol.w1_rows(), sol.w1_cols()) * scale),
          QMatrixd(rng.matrix(sol.w2_rows(), sol.w2_cols()) * scale)};
}

/// Relative scale used for eigen-residual checks: ||Z|| (1 + max |lambda|).
inline double eigen_scale(const SpectralData<double>& d) {
  double lmax = 0;
  for (const auto& l : d.lambdas) lmax = std::max(lmax, l.abs());
  return std::max(1.0, fro_norm(d.z)) * (1 + lmax);
}

}  // namespace qreflex::test

#endif  // QREFLEX_TESTS_HELPERS_HPP
