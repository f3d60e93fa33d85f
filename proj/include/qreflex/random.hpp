#ifndef QREFLEX_RANDOM_HPP
#define QREFLEX_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "qreflex/qmatrix.hpp"

namespace qreflex {

/// Seeded source of random quaternion data.
///
/// Uses std::mt19937_64, whose output sequence is fixed by the standard, and
/// maps it to uniforms/normals directly so that a seed reproduces the same
/// values on every standard library (the std:: distributions are not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Index uniform on [0, n).
  std::uint64_t index(std::uint64_t n) { return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)); }

  /// Standard normal via Box-Muller.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0;
    while (u1 == 0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

  template <typename T = double>
  Quaternion<T> quaternion() {
    const T w = static_cast<T>(normal());
    const T x = static_cast<T>(normal());
    const T y = static_cast<T>(normal());
    const T z = static_cast<T>(normal());
    return {w, x, y, z};
  }

  template <typename T = double>
  Quaternion<T> unit_quaternion() {
    Quaternion<T> q;
    do q = quaternion<T>();
    while (q.norm2() < T(1e-8));
    return q / q.abs();
  }

  template <typename T = double>
  QMatrix<T> matrix(Eigen::Index rows, Eigen::Index cols) {
    QMatrix<T> a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = quaternion<T>();
    return a;
  }

  /// Matrix with real entries (quaternion part zero).
  template <typename T = double>
  QMatrix<T> real_matrix(Eigen::Index rows, Eigen::Index cols) {
    QMatrix<T> a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = Quaternion<T>(static_cast<T>(normal()));
    return a;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0;
  bool has_spare_ = false;
};

}  // namespace qreflex

#endif  // QREFLEX_RANDOM_HPP
