#ifndef QREFLEX_INVERSE_EIG_HPP
#define QREFLEX_INVERSE_EIG_HPP

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qreflex/factor.hpp"
#include "qreflex/random.hpp"
#include "qreflex/structures.hpp"

namespace qreflex {

/// Prescribed right eigenpairs: A Z = Z diag(lambdas).
template <typename T>
struct SpectralData {
  QMatrix<T> z;                               // n x m
  std::vector<StandardEigenvalue<T>> lambdas;  // length m

  Eigen::Index n() const { return z.rows(); }
  Eigen::Index m() const { return z.cols(); }

  /// Accepts arbitrary quaternion eigenvalues. Each pair (z, q) is moved to
  /// (z u^{-1}, u q u^{-1}) with u q u^{-1} standard; the problem is unchanged.
  static SpectralData from_quaternions(QMatrix<T> z, const std::vector<Quaternion<T>>& qs) {
    if (static_cast<Eigen::Index>(qs.size()) != z.cols())
      throw DimensionError("SpectralData: " + std::to_string(qs.size()) + " eigenvalues for " +
                           std::to_string(z.cols()) + " eigenvectors");
    SpectralData out;
    out.lambdas.reserve(qs.size());
    for (Eigen::Index c = 0; c < z.cols(); ++c) {
      const auto& q = qs[static_cast<std::size_t>(c)];
      const Quaternion<T> u_inv = standardizing_rotation(q).conj();
      for (Eigen::Index i = 0; i < z.rows(); ++i) z(i, c) = z(i, c) * u_inv;
      out.lambdas.push_back(standardize(q));
    }
    out.z = std::move(z);
    return out;
  }
};

/// Z diag(lambdas)
template <typename T>
QMatrix<T> scale_columns(const QMatrix<T>& z, const std::vector<StandardEigenvalue<T>>& lambdas) {
  if (static_cast<Eigen::Index>(lambdas.size()) != z.cols())
    throw DimensionError("scale_columns: eigenvalue count differs from column count");
  QMatrix<T> out = z;
  for (Eigen::Index c = 0; c < z.cols(); ++c) {
    const Quaternion<T> l = lambdas[static_cast<std::size_t>(c)].as_quaternion();
    for (Eigen::Index i = 0; i < z.rows(); ++i) out(i, c) = z(i, c) * l;
  }
  return out;
}

/// ||A Z - Z Lambda||
template <typename T>
T eigen_residual(const QMatrix<T>& a, const SpectralData<T>& data) {
  return fro_norm(matmul(a, data.z) - scale_columns(data.z, data.lambdas));
}

/// Distances of one eigenvector from the eigenspaces each block requires.
template <typename T>
struct ColumnResidual {
  Eigen::Index column = 0;
  T norm = 0;
  T block1_x = 0, block1_y = 0;  // off the V-side / U-side range of block 1
  T block2_x = 0, block2_y = 0;
};

/// Eigenvectors that fit neither block, with their residuals.
template <typename T>
class InfeasiblePartition : public InfeasibleStructureError {
 public:
  InfeasiblePartition(const std::string& msg, std::vector<ColumnResidual<T>> cols)
      : InfeasibleStructureError(msg), columns_(std::move(cols)) {}
  const std::vector<ColumnResidual<T>>& columns() const { return columns_; }

 private:
  std::vector<ColumnResidual<T>> columns_;
};

/// Eigen data split into the two blocks of the structured problem.
///
/// Reflexive:      Z perm = [V1 X1, V2 X2] = [U1 Y1, U2 Y2]
/// Antireflexive:  Z perm = [V2 X1, V1 X2] = [U1 Y1, U2 Y2]
/// with Phi, Psi the eigenvalues of the two column groups.
template <typename T>
struct PartitionedSpectralData {
  Structure structure = Structure::reflexive;
  std::vector<Eigen::Index> perm;  // block-1 columns first, then block 2
  Eigen::Index k = 0;
  QMatrix<T> x1, x2, y1, y2;
  std::vector<StandardEigenvalue<T>> phi, psi;
  std::vector<ColumnResidual<T>> residuals;

  Eigen::Index m() const { return static_cast<Eigen::Index>(perm.size()); }

  /// Y1 Phi and Y2 Psi
  QMatrix<T> y1_phi() const { return scale_columns(y1, phi); }
  QMatrix<T> y2_psi() const { return scale_columns(y2, psi); }
};

namespace detail {

template <typename T>
T off_range(const QMatrix<T>& basis, const QMatrix<T>& z) {
  return fro_norm(z - matmul(basis, matmul(adjoint(basis), z)));
}

template <typename T>
QMatrix<T> select_columns(const QMatrix<T>& z, const std::vector<Eigen::Index>& idx,
                          std::size_t from, std::size_t to) {
  QMatrix<T> out(z.rows(), static_cast<Eigen::Index>(to - from));
  for (std::size_t c = from; c < to; ++c) out.col(static_cast<Eigen::Index>(c - from)) = z.col(idx[c]);
  return out;
}

}  // namespace detail

/// Assigns each eigenvector to the block whose eigenspaces contain it.
///
/// Block 1 needs z in range(V1) (range(V2) when antireflexive) and z lambda in
/// range(U1); block 2 the complementary pair. The U-side test is vacuous for
/// lambda = 0. Zero columns go to block 1. Tolerances are relative to ||z||.
template <typename T>
PartitionedSpectralData<T> partition(const SpectralData<T>& data, const ReflectionPair<T>& pair,
                                     Structure structure, T tol = T(kStructuralTol)) {
  if (!(tol > 0)) throw DomainError("partition: tolerance must be positive");
  if (data.z.rows() != pair.n())
    throw DimensionError("partition: Z has " + std::to_string(data.z.rows()) +
                         " rows, reflections are " + std::to_string(pair.n()) + "x" +
                         std::to_string(pair.n()));
  if (static_cast<Eigen::Index>(data.lambdas.size()) != data.z.cols())
    throw DimensionError("partition: eigenvalue count differs from the column count of Z");

  const bool refl = structure == Structure::reflexive;
  const QMatrix<T>& vx1 = refl ? pair.v1() : pair.v2();
  const QMatrix<T>& vx2 = refl ? pair.v2() : pair.v1();

  T zscale = 0;
  for (Eigen::Index c = 0; c < data.z.cols(); ++c) zscale = std::max(zscale, fro_norm(data.z.col(c)));

  PartitionedSpectralData<T> out;
  out.structure = structure;
  std::vector<Eigen::Index> first, second, bad;
  for (Eigen::Index c = 0; c < data.z.cols(); ++c) {
    const QMatrix<T> z = data.z.col(c);
    ColumnResidual<T> r;
    r.column = c;
    r.norm = fro_norm(z);
    if (r.norm <= tol * zscale) {
      out.residuals.push_back(r);
      first.push_back(c);
      continue;
    }
    r.block1_x = detail::off_range(vx1, z);
    r.block1_y = detail::off_range(pair.u1(), z);
    r.block2_x = detail::off_range(vx2, z);
    r.block2_y = detail::off_range(pair.u2(), z);
    out.residuals.push_back(r);
    const bool zero_eig = data.lambdas[static_cast<std::size_t>(c)].is_zero();
    const T cut = tol * r.norm;
    if (r.block1_x <= cut && (zero_eig || r.block1_y <= cut))
      first.push_back(c);
    else if (r.block2_x <= cut && (zero_eig || r.block2_y <= cut))
      second.push_back(c);
    else
      bad.push_back(c);
  }
  if (!bad.empty()) {
    std::ostringstream msg;
    msg << "partition: " << bad.size() << " eigenvector(s) lie in neither block's eigenspaces ("
        << to_string(structure) << ", tol " << tol << ")";
    std::vector<ColumnResidual<T>> cols;
    for (auto c : bad) {
      const auto& r = out.residuals[static_cast<std::size_t>(c)];
      msg << "\n  column " << c << ": |z| = " << r.norm << ", block 1 residuals (" << r.block1_x
          << ", " << r.block1_y << "), block 2 residuals (" << r.block2_x << ", " << r.block2_y << ")";
      cols.push_back(r);
    }
    throw InfeasiblePartition<T>(msg.str(), std::move(cols));
  }

  out.perm = first;
  out.perm.insert(out.perm.end(), second.begin(), second.end());
  out.k = static_cast<Eigen::Index>(first.size());
  const QMatrix<T> z1 = detail::select_columns(data.z, out.perm, 0, first.size());
  const QMatrix<T> z2 = detail::select_columns(data.z, out.perm, first.size(), out.perm.size());
  out.x1 = matmul(adjoint(vx1), z1);
  out.y1 = matmul(adjoint(pair.u1()), z1);
  out.x2 = matmul(adjoint(vx2), z2);
  out.y2 = matmul(adjoint(pair.u2()), z2);
  for (auto c : first) out.phi.push_back(data.lambdas[static_cast<std::size_t>(c)]);
  for (auto c : second) out.psi.push_back(data.lambdas[static_cast<std::size_t>(c)]);
  return out;
}

/// Residuals of the consistency conditions Y1 Phi X1+ X1 = Y1 Phi and
/// Y2 Psi X2+ X2 = Y2 Psi.
template <typename T>
struct SolvabilityReport {
  T residual1 = 0, scale1 = 0;
  T residual2 = 0, scale2 = 0;
  T tol = 0;

  bool block1() const { return residual1 <= tol * scale1; }
  bool block2() const { return residual2 <= tol * scale2; }
  bool ok() const { return block1() && block2(); }
};

template <typename T>
SolvabilityReport<T> solvability(const PartitionedSpectralData<T>& part, T tol = T(kStructuralTol),
                                 T rank_tol = T(kOrthTol)) {
  const auto r1 = solve_left<T>(part.x1, part.y1_phi(), tol, rank_tol);
  const auto r2 = solve_left<T>(part.x2, part.y2_psi(), tol, rank_tol);
  SolvabilityReport<T> rep;
  rep.tol = tol;
  rep.residual1 = r1.residual;
  rep.scale1 = fro_norm(part.y1_phi());
  rep.residual2 = r2.residual;
  rep.scale2 = fro_norm(part.y2_psi());
  return rep;
}

/// The structured set { A : A Z = Z Lambda } is nonempty.
template <typename T>
bool solvable(const PartitionedSpectralData<T>& part, T tol = T(kStructuralTol)) {
  return solvability(part, tol).ok();
}

/// Every structured solution of A Z = Z Lambda, parametrized by (W1, W2):
///   reflexive:      A = U1 (B1 + W1 R1) V1* + U2 (B2 + W2 R2) V2*
///   antireflexive:  A = U1 (B1 + W1 R1) V2* + U2 (B2 + W2 R2) V1*
/// with B1 = Y1 Phi X1+, B2 = Y2 Psi X2+, Ri = R_{Xi}.
template <typename T>
class GeneralSolution {
 public:
  GeneralSolution(ReflectionPair<T> pair, Structure s, QMatrix<T> b1, QMatrix<T> b2, QMatrix<T> r1,
                  QMatrix<T> r2)
      : pair_(std::move(pair)), structure_(s), b1_(std::move(b1)), b2_(std::move(b2)),
        r1_(std::move(r1)), r2_(std::move(r2)) {}

  Structure structure() const { return structure_; }
  const ReflectionPair<T>& pair() const { return pair_; }
  const QMatrix<T>& particular1() const { return b1_; }
  const QMatrix<T>& particular2() const { return b2_; }
  const QMatrix<T>& annihilator1() const { return r1_; }
  const QMatrix<T>& annihilator2() const { return r2_; }

  Eigen::Index w1_rows() const { return b1_.rows(); }
  Eigen::Index w1_cols() const { return b1_.cols(); }
  Eigen::Index w2_rows() const { return b2_.rows(); }
  Eigen::Index w2_cols() const { return b2_.cols(); }

  /// Nonzero blocks (B1 + W1 R1, B2 + W2 R2).
  std::pair<QMatrix<T>, QMatrix<T>> blocks(const QMatrix<T>& w1, const QMatrix<T>& w2) const {
    detail::require_same_shape(w1, b1_, "GeneralSolution: W1");
    detail::require_same_shape(w2, b2_, "GeneralSolution: W2");
    return {b1_ + matmul(w1, r1_), b2_ + matmul(w2, r2_)};
  }

  /// Assembles A from the two nonzero blocks.
  QMatrix<T> assemble(const QMatrix<T>& block1, const QMatrix<T>& block2) const {
    if (structure_ == Structure::reflexive)
      return matmul(pair_.u1(), block1, adjoint(pair_.v1())) +
             matmul(pair_.u2(), block2, adjoint(pair_.v2()));
    return matmul(pair_.u1(), block1, adjoint(pair_.v2())) +
           matmul(pair_.u2(), block2, adjoint(pair_.v1()));
  }

  QMatrix<T> materialize(const QMatrix<T>& w1, const QMatrix<T>& w2) const {
    auto [a1, a2] = blocks(w1, w2);
    return assemble(a1, a2);
  }

  /// W1 = W2 = 0 member.
  QMatrix<T> particular() const { return assemble(b1_, b2_); }

 private:
  ReflectionPair<T> pair_;
  Structure structure_;
  QMatrix<T> b1_, b2_, r1_, r2_;
};

template <typename T>
GeneralSolution<T> general_solution(const PartitionedSpectralData<T>& part,
                                    const ReflectionPair<T>& pair, T tol = T(kStructuralTol),
                                    T rank_tol = T(kOrthTol)) {
  const auto rep = solvability(part, tol, rank_tol);
  if (!rep.ok()) {
    std::ostringstream msg;
    msg << "inverse eigenproblem has no " << to_string(part.structure) << " solution";
    if (!rep.block1())
      msg << "\n  block 1: ||Y1 Phi X1+ X1 - Y1 Phi|| = " << rep.residual1 << " (||Y1 Phi|| = " << rep.scale1 << ")";
    if (!rep.block2())
      msg << "\n  block 2: ||Y2 Psi X2+ X2 - Y2 Psi|| = " << rep.residual2 << " (||Y2 Psi|| = " << rep.scale2 << ")";
    throw UnsolvableError(msg.str());
  }
  const auto s1 = solve_left<T>(part.x1, part.y1_phi(), tol, rank_tol);
  const auto s2 = solve_left<T>(part.x2, part.y2_psi(), tol, rank_tol);
  return GeneralSolution<T>(pair, part.structure, s1.particular, s2.particular, s1.annihilator,
                            s2.annihilator);
}

/// One member of the solution set; W1 = W2 = 0 gives the canonical particular solution.
template <typename T>
QMatrix<T> solve(const PartitionedSpectralData<T>& part, const ReflectionPair<T>& pair,
                 const QMatrix<T>& w1, const QMatrix<T>& w2, T tol = T(kStructuralTol)) {
  return general_solution(part, pair, tol).materialize(w1, w2);
}

template <typename T>
QMatrix<T> solve(const PartitionedSpectralData<T>& part, const ReflectionPair<T>& pair,
                 T tol = T(kStructuralTol)) {
  return general_solution(part, pair, tol).particular();
}

/// P = Q case: reflexive (A = PAP) or antireflexive (A = -PAP) solutions. The
/// X and Y coordinates coincide for reflexive data.
template <typename T>
QMatrix<T> solve_same_reflection(const SpectralData<T>& data, const QMatrix<T>& p, Structure s,
                                 const QMatrix<T>& w1, const QMatrix<T>& w2,
                                 T tol = T(kStructuralTol)) {
  const auto pair = make_pair<T>(p, p, tol);
  return solve(partition(data, pair, s, tol), pair, w1, w2, tol);
}

template <typename T>
QMatrix<T> solve_same_reflection(const SpectralData<T>& data, const QMatrix<T>& p, Structure s,
                                 T tol = T(kStructuralTol)) {
  const auto pair = make_pair<T>(p, p, tol);
  return solve(partition(data, pair, s, tol), pair, tol);
}

// ---------------------------------------------------------------------------
// Instance generator

struct InstanceSpec {
  Eigen::Index n = 4;
  Eigen::Index r1 = 2;  // rank of the +1 eigenspace of P
  Eigen::Index r2 = 2;  // rank of the +1 eigenspace of Q
  Eigen::Index k = 1;   // eigenvectors in block 1
  Eigen::Index m = 2;   // eigenvectors in total
  Structure structure = Structure::reflexive;
  std::uint64_t seed = 0;
  /// Q = P. Antireflexive data then only admits zero eigenvalues.
  bool same_reflection = false;
};

template <typename T>
struct Instance {
  ReflectionPair<T> pair;
  SpectralData<T> data;
};

/// Widths (block-1 capacity, block-2 capacity) available to the generator.
inline std::pair<Eigen::Index, Eigen::Index> instance_capacity(const InstanceSpec& s) {
  const bool refl = s.structure == Structure::reflexive;
  if (s.same_reflection) {
    if (refl) return {s.r1, s.n - s.r1};
    return {s.n - s.r1, s.r1};
  }
  if (refl) return {std::min(s.r1, s.r2), s.n - std::max(s.r1, s.r2)};
  return {std::min(s.r1, s.n - s.r2), std::min(s.n - s.r1, s.r2)};
}

/// Random solvable instance, reproducible from the seed.
///
/// A random unitary W gives U1 = W(:, :r1), U2 = W(:, r1:). Block-1 eigenvectors
/// are drawn from a k-dimensional subspace S1 inside the required U-side
/// eigenspace, block-2 ones from S2 of dimension m - k. Q is then built so that
/// its eigenspaces contain S1 and S2 as each block requires, with the remaining
/// directions random, so P and Q do not commute in general. Coordinates have
/// full column rank, which makes the instance consistent. Column order is
/// shuffled.
template <typename T = double>
Instance<T> generate_instance(const InstanceSpec& s) {
  if (s.n < 1) throw DomainError("generate_instance: n must be at least 1");
  if (s.r1 < 0 || s.r1 >= s.n || s.r2 < 0 || s.r2 >= s.n)
    throw DomainError("generate_instance: need 0 <= r1, r2 < n (P, Q != I)");
  if (s.same_reflection && s.r1 != s.r2)
    throw DomainError("generate_instance: same_reflection needs r1 = r2");
  if (s.k < 0 || s.m < s.k) throw DomainError("generate_instance: need 0 <= k <= m");
  const auto [cap1, cap2] = instance_capacity(s);
  if (s.k > cap1 || s.m - s.k > cap2)
    throw DomainError("generate_instance: infeasible widths, block 1 holds at most " +
                      std::to_string(cap1) + " and block 2 at most " + std::to_string(cap2) +
                      " independent eigenvectors (requested k = " + std::to_string(s.k) +
                      ", m - k = " + std::to_string(s.m - s.k) + ")");

  Rng rng(s.seed);
  const auto n = s.n, k = s.k, l = s.m - s.k;
  const bool refl = s.structure == Structure::reflexive;

  const auto unitary = mgs<T>(rng.matrix<T>(n, n));
  if (unitary.rank != n) throw DomainError("generate_instance: degenerate random draw");
  const QMatrix<T> u1 = unitary.matrix.leftCols(s.r1);
  const QMatrix<T> u2 = unitary.matrix.rightCols(n - s.r1);
  const auto reflection = [](const QMatrix<T>& plus, const QMatrix<T>& minus) -> QMatrix<T> {
    return matmul(plus, adjoint(plus)) - matmul(minus, adjoint(minus));
  };
  const auto isometry = [&](const QMatrix<T>& range, Eigen::Index width) -> QMatrix<T> {
    if (width == 0) return zeros<T>(n, 0);
    return matmul(range, mgs<T>(rng.matrix<T>(range.cols(), width)).matrix);
  };

  QMatrix<T> s1, s2, p = reflection(u1, u2), q;
  if (s.same_reflection) {
    // Reflexive: blocks live in the +1 / -1 eigenspaces. Antireflexive: only
    // kernel vectors fit, block 1 in the -1 eigenspace and block 2 in the +1.
    s1 = refl ? isometry(u1, k) : isometry(u2, k);
    s2 = refl ? isometry(u2, l) : isometry(u1, l);
    q = p;
  } else {
    s1 = isometry(u1, k);
    s2 = isometry(u2, l);
    // Complete [S1, S2] to a unitary; the extra directions fill out Q's eigenspaces.
    const auto full = mgs<T>(hcat(hcat(s1, s2), rng.matrix<T>(n, n)));
    if (full.rank != n) throw DomainError("generate_instance: degenerate random draw");
    const QMatrix<T> extra = full.matrix.rightCols(n - k - l);
    // V1 must contain S1 (reflexive) or S2 (antireflexive).
    const QMatrix<T>& in_v1 = refl ? s1 : s2;
    const QMatrix<T>& in_v2 = refl ? s2 : s1;
    const auto fill1 = s.r2 - in_v1.cols();
    const QMatrix<T> v1 = hcat(in_v1, QMatrix<T>(extra.leftCols(fill1)));
    const QMatrix<T> v2 = hcat(in_v2, QMatrix<T>(extra.rightCols(extra.cols() - fill1)));
    q = reflection(v1, v2);
  }

  QMatrix<T> z = hcat(matmul(s1, rng.matrix<T>(k, k)), matmul(s2, rng.matrix<T>(l, l)));
  std::vector<StandardEigenvalue<T>> lambdas;
  for (Eigen::Index c = 0; c < s.m; ++c) {
    if (!refl && s.same_reflection) {
      lambdas.emplace_back(T(0), T(0));
      continue;
    }
    const T re = static_cast<T>(2.0 * rng.normal());
    const T im = rng.uniform() < 0.3 ? T(0) : static_cast<T>(std::abs(rng.normal()));
    lambdas.emplace_back(re, im);
  }
  // Fisher-Yates over the columns.
  for (Eigen::Index c = s.m - 1; c > 0; --c) {
    const auto j = static_cast<Eigen::Index>(rng.index(static_cast<std::uint64_t>(c + 1)));
    if (j == c) continue;
    z.col(c).swap(z.col(j));
    std::swap(lambdas[static_cast<std::size_t>(c)], lambdas[static_cast<std::size_t>(j)]);
  }
  return {make_pair<T>(p, q), SpectralData<T>{std::move(z), std::move(lambdas)}};
}

}  // namespace qreflex

#endif  // QREFLEX_INVERSE_EIG_HPP
