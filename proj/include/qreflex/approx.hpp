#ifndef QREFLEX_APPROX_HPP
#define QREFLEX_APPROX_HPP

#include <array>
#include <cmath>

#include "qreflex/factor.hpp"
#include "qreflex/inverse_eig.hpp"
#include "qreflex/structures.hpp"

namespace qreflex {

/// min_X ||Gamma X F - E|| for orthogonal projectors Gamma, F.
template <typename T>
struct ProjectorNearness {
  T minimum = 0;          // ||Gamma E F - E||
  QMatrix<T> minimizer;   // X = E, the Y = 0 member of E + L_Gamma Y R_F
  QMatrix<T> left_free;   // L_Gamma = I - Gamma
  QMatrix<T> right_free;  // R_F = I - F

  /// E + L_Gamma Y R_F; every member attains the minimum.
  QMatrix<T> member(const QMatrix<T>& y) const {
    detail::require_same_shape(y, minimizer, "ProjectorNearness::member");
    return minimizer + matmul(left_free, y, right_free);
  }
};

namespace detail {

template <typename T>
void require_projector(const QMatrix<T>& g, T tol, const char* name) {
  require_square(g, name);
  const T scale = std::max(T(1), fro_norm(g));
  if (fro_norm(g - adjoint(g)) > tol * scale)
    throw DomainError(std::string(name) + " is not Hermitian");
  if (fro_norm(matmul(g, g) - g) > tol * scale)
    throw DomainError(std::string(name) + " is not idempotent");
}

}  // namespace detail

template <typename T>
ProjectorNearness<T> nearest_through_projectors(const QMatrix<T>& e, const QMatrix<T>& gamma,
                                                const QMatrix<T>& f, T tol = T(kStructuralTol)) {
  detail::require_projector(gamma, tol, "Gamma");
  detail::require_projector(f, tol, "F");
  if (gamma.rows() != e.rows() || f.rows() != e.cols())
    throw DimensionError("nearest_through_projectors: projector sizes do not match E");
  ProjectorNearness<T> out;
  out.minimum = fro_norm(matmul(gamma, e, f) - e);
  out.minimizer = e;
  // For an orthogonal projector G+ = G, so L_G = I - G+ G = I - G.
  out.left_free = identity<T>(gamma.rows()) - gamma;
  out.right_free = identity<T>(f.rows()) - f;
  return out;
}

/// min_W ||W R_X - C||, attained by W = C + T X X+ for every T.
template <typename T>
struct ResidualMinimum {
  QMatrix<T> particular;  // C
  T minimum = 0;          // ||C X X+||
  QMatrix<T> range_projector;  // X X+

  /// C + T X X+
  QMatrix<T> member(const QMatrix<T>& t) const {
    detail::require_same_shape(t, particular, "ResidualMinimum::member");
    return particular + matmul(t, range_projector);
  }
};

template <typename T>
ResidualMinimum<T> min_residual_rhs(const QMatrix<T>& c, const QMatrix<T>& x, T rank_tol = T(kOrthTol)) {
  if (c.cols() != x.rows())
    throw DimensionError("min_residual_rhs: C has " + std::to_string(c.cols()) + " columns, X has " +
                         std::to_string(x.rows()) + " rows");
  ResidualMinimum<T> out;
  out.particular = c;
  out.range_projector = matmul(x, pinv<T>(x, rank_tol));
  out.minimum = fro_norm(matmul(c, out.range_projector));
  return out;
}

/// Frobenius-nearest member of the structured solution set to a target E.
template <typename T>
struct ApproximationResult {
  QMatrix<T> minimizer;
  T distance = 0;
  /// Squared contributions of the blocks (11, 12, 21, 22) of U*(A - E)V.
  std::array<T, 4> block_residuals{};
};

namespace detail {

template <typename T>
ApproximationResult<T> nearest_solution(const QMatrix<T>& e, const PartitionedSpectralData<T>& part,
                                        const ReflectionPair<T>& pair, Structure expected, T tol) {
  if (part.structure != expected)
    throw DomainError(std::string("nearest ") + std::string(to_string(expected)) +
                      " solution requested for " + std::string(to_string(part.structure)) + " data");
  detail::require_pair_shape(e, pair, "nearest solution (E)");
  const auto sol = general_solution(part, pair, tol);
  const auto eb = block_decompose(e, pair);
  const bool refl = expected == Structure::reflexive;
  // Target blocks for the two free slots; the other two are fixed at zero.
  const QMatrix<T>& e_first = refl ? eb.a11 : eb.a12;
  const QMatrix<T>& e_second = refl ? eb.a22 : eb.a21;
  const QMatrix<T>& e_fixed_a = refl ? eb.a12 : eb.a11;
  const QMatrix<T>& e_fixed_b = refl ? eb.a21 : eb.a22;

  // W = E-block: B + E R_X, the unique minimizer.
  auto [a1, a2] = sol.blocks(e_first, e_second);
  ApproximationResult<T> out;
  const T res1 = fro_norm2(QMatrix<T>(a1 - e_first));
  const T res2 = fro_norm2(QMatrix<T>(a2 - e_second));
  if (refl)
    out.block_residuals = {res1, fro_norm2(e_fixed_a), fro_norm2(e_fixed_b), res2};
  else
    out.block_residuals = {fro_norm2(e_fixed_a), res1, res2, fro_norm2(e_fixed_b)};
  out.minimizer = sol.assemble(a1, a2);
  out.distance = std::sqrt(out.block_residuals[0] + out.block_residuals[1] +
                           out.block_residuals[2] + out.block_residuals[3]);
  return out;
}

}  // namespace detail

/// A_r = U diag(Y1 Phi X1+ + E11 R_X1, Y2 Psi X2+ + E22 R_X2) V*, with
/// distance^2 = ||E11 X1 X1+ - Y1 Phi X1+||^2 + ||E22 X2 X2+ - Y2 Psi X2+||^2
///              + ||E12||^2 + ||E21||^2.
template <typename T>
ApproximationResult<T> nearest_reflexive_solution(const QMatrix<T>& e,
                                                  const PartitionedSpectralData<T>& part,
                                                  const ReflectionPair<T>& pair,
                                                  T tol = T(kStructuralTol)) {
  return detail::nearest_solution(e, part, pair, Structure::reflexive, tol);
}

/// A_a = U antidiag(Y1 Phi X1+ + E12 R_X1, Y2 Psi X2+ + E21 R_X2) V*.
template <typename T>
ApproximationResult<T> nearest_antireflexive_solution(const QMatrix<T>& e,
                                                      const PartitionedSpectralData<T>& part,
                                                      const ReflectionPair<T>& pair,
                                                      T tol = T(kStructuralTol)) {
  return detail::nearest_solution(e, part, pair, Structure::antireflexive, tol);
}

/// Dispatches on the structure of the partition.
template <typename T>
ApproximationResult<T> nearest_solution(const QMatrix<T>& e, const PartitionedSpectralData<T>& part,
                                        const ReflectionPair<T>& pair, T tol = T(kStructuralTol)) {
  return detail::nearest_solution(e, part, pair, part.structure, tol);
}

}  // namespace qreflex

#endif  // QREFLEX_APPROX_HPP
