#ifndef QREFLEX_TESTS_ORACLES_HPP
#define QREFLEX_TESTS_ORACLES_HPP

// Independent reference computations. They go through the complex embedding and
// Eigen's own complex/real decompositions, never through the quaternion solvers.

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <functional>

#include "qreflex/qreflex.hpp"

namespace qreflex::oracle {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

inline MatrixXcd embed(const QMatrixd& a) { return MatrixXcd(chi_embed(a)); }

/// Complex Moore-Penrose inverse by SVD.
inline MatrixXcd complex_pinv(const MatrixXcd& m) {
  if (m.size() == 0) return MatrixXcd::Zero(m.cols(), m.rows());
  Eigen::JacobiSVD<MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double cut = 1e-10 * std::max(1.0, s.size() ? s(0) : 0.0);
  VectorXd inv(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) inv(i) = s(i) > cut ? 1.0 / s(i) : 0.0;
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

/// Entry-wise quaternion matrix product via the embedding (independent of matmul).
inline QMatrixd embedded_product(const QMatrixd& a, const QMatrixd& b) {
  return chi_extract<double>(CMatrixd(embed(a) * embed(b)));
}

/// Real coordinates of a quaternion matrix, 4 per entry.
inline VectorXd flatten(const QMatrixd& a) {
  VectorXd v(4 * a.size());
  Eigen::Index t = 0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      v(t++) = a(i, j).w;
      v(t++) = a(i, j).x;
      v(t++) = a(i, j).y;
      v(t++) = a(i, j).z;
    }
  return v;
}

inline QMatrixd unflatten(const VectorXd& v, Eigen::Index rows, Eigen::Index cols) {
  QMatrixd a(rows, cols);
  Eigen::Index t = 0;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j, t += 4) a(i, j) = {v(t), v(t + 1), v(t + 2), v(t + 3)};
  return a;
}

/// Real coordinates of a complex matrix (real and imaginary parts).
inline VectorXd flatten(const MatrixXcd& m) {
  VectorXd v(2 * m.size());
  Eigen::Index t = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      v(t++) = m(i, j).real();
      v(t++) = m(i, j).imag();
    }
  return v;
}

/// Brute-force description of { A in H^{n x n} : A Z = Z Lambda, A = sign P A Q }
/// as a real affine system L a = c, with every product formed in the embedding.
struct StructuredEigenSystem {
  MatrixXd l;
  VectorXd c;
  Eigen::Index n = 0;

  StructuredEigenSystem(const QMatrixd& p, const QMatrixd& q, const SpectralData<double>& data,
                        Structure s)
      : n(p.rows()) {
    const double sign = s == Structure::reflexive ? 1.0 : -1.0;
    const MatrixXcd cp = embed(p), cq = embed(q), cz = embed(data.z);
    QMatrixd lam = zeros<double>(data.m(), data.m());
    for (Eigen::Index i = 0; i < data.m(); ++i)
      lam(i, i) = data.lambdas[static_cast<std::size_t>(i)].as_quaternion();
    const MatrixXcd zl = cz * embed(lam);

    const auto map = [&](const MatrixXcd& ca) {
      const VectorXd eig = flatten(MatrixXcd(ca * cz));
      const VectorXd str = flatten(MatrixXcd(ca - sign * cp * ca * cq));
      VectorXd out(eig.size() + str.size());
      out << eig, str;
      return out;
    };
    const Eigen::Index unknowns = 4 * n * n;
    VectorXd zero_out = map(MatrixXcd::Zero(2 * n, 2 * n));
    l.resize(zero_out.size(), unknowns);
    for (Eigen::Index u = 0; u < unknowns; ++u) {
      VectorXd e = VectorXd::Zero(unknowns);
      e(u) = 1;
      l.col(u) = map(embed(unflatten(e, n, n)));
    }
    c = VectorXd::Zero(zero_out.size());
    const VectorXd zlv = flatten(zl);
    c.head(zlv.size()) = zlv;
  }

  /// Least-squares residual ||L a - c|| at the minimizer, relative to ||c||.
  double relative_residual() const {
    const double cn = c.norm();
    if (cn == 0) return 0;
    const VectorXd a = l.completeOrthogonalDecomposition().solve(c);
    return (l * a - c).norm() / cn;
  }

  bool feasible(double tol = 1e-8) const { return relative_residual() <= tol; }

  /// Minimum-norm solution.
  QMatrixd particular() const {
    return unflatten(l.completeOrthogonalDecomposition().solve(c), n, n);
  }

  /// Orthonormal basis of the real null space of L, one column per direction.
  MatrixXd kernel() const {
    Eigen::JacobiSVD<MatrixXd> svd(l, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double cut = 1e-9 * std::max(1.0, s.size() ? s(0) : 0.0);
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) > cut) ++rank;
    return svd.matrixV().rightCols(l.cols() - rank);
  }
};

/// Real orthogonal n x n matrix (as quaternion matrix) from a QR of a Gaussian draw.
inline QMatrixd real_orthogonal(Rng& rng, Eigen::Index n) {
  MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = rng.normal();
  const MatrixXd qm = Eigen::HouseholderQR<MatrixXd>(g).householderQ();
  QMatrixd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = qm(i, j);
  return out;
}

}  // namespace qreflex::oracle

#endif  // QREFLEX_TESTS_ORACLES_HPP
