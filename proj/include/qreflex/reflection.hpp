#ifndef QREFLEX_REFLECTION_HPP
#define QREFLEX_REFLECTION_HPP

#include <string>

#include "qreflex/qmatrix.hpp"

namespace qreflex {

/// Default relative tolerance for structural checks (reflection, class membership).
inline constexpr double kStructuralTol = 1e-8;

/// Residuals behind the generalized-reflection test P* = P != I, P^2 = I.
template <typename T>
struct ReflectionCheck {
  Eigen::Index n = 0;
  T hermitian_residual = 0;   // ||P - P*||
  T involution_residual = 0;  // ||P^2 - I||
  T identity_distance = 0;    // ||P - I||
  T tol = 0;

  bool hermitian() const { return hermitian_residual <= tol * n; }
  bool involutory() const { return involution_residual <= tol * n; }
  bool nontrivial() const { return identity_distance > tol * n; }
  bool ok() const { return hermitian() && involutory() && nontrivial(); }

  /// First violated condition, or an empty string.
  std::string reason() const {
    if (!hermitian()) return "not Hermitian (||P - P*|| = " + std::to_string(hermitian_residual) + ")";
    if (!involutory()) return "not involutory (||P^2 - I|| = " + std::to_string(involution_residual) + ")";
    if (!nontrivial()) return "equal to the identity (P != I violated)";
    return {};
  }
};

template <typename T>
ReflectionCheck<T> check_reflection(const QMatrix<T>& p, T tol = T(kStructuralTol)) {
  detail::require_square(p, "check_reflection");
  const auto n = p.rows();
  const QMatrix<T> eye = identity<T>(n);
  ReflectionCheck<T> c;
  c.n = n;
  c.tol = tol;
  c.hermitian_residual = fro_norm(p - adjoint(p));
  c.involution_residual = fro_norm(matmul(p, p) - eye);
  c.identity_distance = fro_norm(p - eye);
  return c;
}

/// True iff P is a nontrivial generalized reflection within `tol` (scaled by n).
template <typename T>
bool validate_reflection(const QMatrix<T>& p, T tol = T(kStructuralTol)) {
  return check_reflection(p, tol).ok();
}

}  // namespace qreflex

#endif  // QREFLEX_REFLECTION_HPP
