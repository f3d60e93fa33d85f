#ifndef QREFLEX_STRUCTURES_HPP
#define QREFLEX_STRUCTURES_HPP

#include <string>
#include <string_view>
#include <utility>

#include "qreflex/factor.hpp"
#include "qreflex/reflection.hpp"

namespace qreflex {

template <typename T>
class ReflectionPair;

template <typename T>
ReflectionPair<T> make_pair(const QMatrix<T>& p, const QMatrix<T>& q, T tol = T(kStructuralTol),
                            T orth_tol = T(kOrthTol));

/// Validated pair (P, Q) of generalized reflections with cached eigenbases
///   P = [U1, U2] diag(I_r1, -I_{n-r1}) [U1, U2]*,
///   Q = [V1, V2] diag(I_r2, -I_{n-r2}) [V1, V2]*.
/// Immutable once built; construct with make_pair.
template <typename T>
class ReflectionPair {
 public:
  const QMatrix<T>& p() const { return p_; }
  const QMatrix<T>& q() const { return q_; }
  const QMatrix<T>& u1() const { return u1_; }
  const QMatrix<T>& u2() const { return u2_; }
  const QMatrix<T>& v1() const { return v1_; }
  const QMatrix<T>& v2() const { return v2_; }
  Eigen::Index n() const { return p_.rows(); }
  Eigen::Index r1() const { return u1_.cols(); }
  Eigen::Index r2() const { return v1_.cols(); }

  /// [U1, U2]
  QMatrix<T> u() const { return hcat(u1_, u2_); }
  /// [V1, V2]
  QMatrix<T> v() const { return hcat(v1_, v2_); }

 private:
  template <typename S>
  friend ReflectionPair<S> make_pair(const QMatrix<S>&, const QMatrix<S>&, S, S);

  QMatrix<T> p_, q_, u1_, u2_, v1_, v2_;
};

/// Validates P and Q and computes their eigenbases by Gram-Schmidt on I +- P, I +- Q.
template <typename T>
ReflectionPair<T> make_pair(const QMatrix<T>& p, const QMatrix<T>& q, T tol, T orth_tol) {
  detail::require_square(p, "make_pair(P)");
  detail::require_square(q, "make_pair(Q)");
  if (p.rows() != q.rows())
    throw DimensionError("make_pair: P is " + std::to_string(p.rows()) + "x" +
                         std::to_string(p.rows()) + " but Q is " + std::to_string(q.rows()) + "x" +
                         std::to_string(q.rows()));
  for (auto [name, m] : {std::pair<const char*, const QMatrix<T>*>{"P", &p}, {"Q", &q}}) {
    const auto c = check_reflection(*m, tol);
    if (!c.ok()) throw ValidationError(std::string(name) + " is " + c.reason());
  }
  ReflectionPair<T> pair;
  pair.p_ = p;
  pair.q_ = q;
  auto [u1, u2] = reflection_eigenbasis<T>(p, orth_tol, tol);
  auto [v1, v2] = reflection_eigenbasis<T>(q, orth_tol, tol);
  pair.u1_ = std::move(u1.matrix);
  pair.u2_ = std::move(u2.matrix);
  pair.v1_ = std::move(v1.matrix);
  pair.v2_ = std::move(v2.matrix);
  return pair;
}

/// P = Q specialization (reflexive / antireflexive with respect to one reflection).
template <typename T>
ReflectionPair<T> make_pair(const QMatrix<T>& p, T tol = T(kStructuralTol)) {
  return make_pair<T>(p, p, tol);
}

enum class MatrixClass { reflexive, antireflexive, neither, zero };

inline std::string_view to_string(MatrixClass c) {
  switch (c) {
    case MatrixClass::reflexive: return "reflexive";
    case MatrixClass::antireflexive: return "antireflexive";
    case MatrixClass::neither: return "neither";
    case MatrixClass::zero: return "zero";
  }
  return "neither";
}

/// The two solution classes of the inverse eigenproblem.
enum class Structure { reflexive, antireflexive };

inline std::string_view to_string(Structure s) {
  return s == Structure::reflexive ? "reflexive" : "antireflexive";
}

namespace detail {

template <typename T>
void require_pair_shape(const QMatrix<T>& a, const ReflectionPair<T>& pair, const char* what) {
  if (a.rows() != pair.n() || a.cols() != pair.n())
    throw DimensionError(std::string(what) + ": matrix is " + shape_str(a.rows(), a.cols()) +
                         ", reflections are " + shape_str(pair.n(), pair.n()));
}

}  // namespace detail

/// P A Q
template <typename T>
QMatrix<T> reflect(const QMatrix<T>& a, const ReflectionPair<T>& pair) {
  detail::require_pair_shape(a, pair, "reflect");
  return matmul(pair.p(), a, pair.q());
}

/// zero if ||A|| <= tol; reflexive if ||A - PAQ|| <= tol ||A||; antireflexive if
/// ||A + PAQ|| <= tol ||A||; neither otherwise.
template <typename T>
MatrixClass classify(const QMatrix<T>& a, const ReflectionPair<T>& pair, T tol = T(kStructuralTol)) {
  const QMatrix<T> paq = reflect(a, pair);
  const T norm = fro_norm(a);
  if (norm <= tol) return MatrixClass::zero;
  if (fro_norm(a - paq) <= tol * norm) return MatrixClass::reflexive;
  if (fro_norm(a + paq) <= tol * norm) return MatrixClass::antireflexive;
  return MatrixClass::neither;
}

/// Orthogonal decomposition A = A_r + A_a with A_r = (A + PAQ)/2 in H_r and
/// A_a = (A - PAQ)/2 in H_a.
template <typename T>
std::pair<QMatrix<T>, QMatrix<T>> split(const QMatrix<T>& a, const ReflectionPair<T>& pair) {
  const QMatrix<T> paq = reflect(a, pair);
  return {QMatrix<T>((a + paq) * T(0.5)), QMatrix<T>((a - paq) * T(0.5))};
}

/// Blocks of U* A V for the partitions U = [U1, U2], V = [V1, V2].
template <typename T>
struct BlockForm {
  QMatrix<T> a11;  // r1 x r2
  QMatrix<T> a12;  // r1 x (n - r2)
  QMatrix<T> a21;  // (n - r1) x r2
  QMatrix<T> a22;  // (n - r1) x (n - r2)
};

template <typename T>
BlockForm<T> block_decompose(const QMatrix<T>& a, const ReflectionPair<T>& pair) {
  detail::require_pair_shape(a, pair, "block_decompose");
  const QMatrix<T> u1h = adjoint(pair.u1());
  const QMatrix<T> u2h = adjoint(pair.u2());
  const QMatrix<T> av1 = matmul(a, pair.v1());
  const QMatrix<T> av2 = matmul(a, pair.v2());
  return {matmul(u1h, av1), matmul(u1h, av2), matmul(u2h, av1), matmul(u2h, av2)};
}

/// Sum of Ui Aij Vj*; exact inverse of block_decompose.
template <typename T>
QMatrix<T> block_reconstruct(const BlockForm<T>& b, const ReflectionPair<T>& pair) {
  const auto n = pair.n(), r1 = pair.r1(), r2 = pair.r2();
  const auto check = [](const QMatrix<T>& m, Eigen::Index rows, Eigen::Index cols, const char* name) {
    if (m.rows() != rows || m.cols() != cols)
      throw DimensionError(std::string("block_reconstruct: ") + name + " is " +
                           detail::shape_str(m.rows(), m.cols()) + ", expected " +
                           detail::shape_str(rows, cols));
  };
  check(b.a11, r1, r2, "A11");
  check(b.a12, r1, n - r2, "A12");
  check(b.a21, n - r1, r2, "A21");
  check(b.a22, n - r1, n - r2, "A22");
  const QMatrix<T> v1h = adjoint(pair.v1());
  const QMatrix<T> v2h = adjoint(pair.v2());
  return matmul(pair.u1(), b.a11, v1h) + matmul(pair.u1(), b.a12, v2h) +
         matmul(pair.u2(), b.a21, v1h) + matmul(pair.u2(), b.a22, v2h);
}

}  // namespace qreflex

#endif  // QREFLEX_STRUCTURES_HPP
