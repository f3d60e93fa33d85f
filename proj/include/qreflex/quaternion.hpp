#ifndef QREFLEX_QUATERNION_HPP
#define QREFLEX_QUATERNION_HPP

#include <cmath>
#include <complex>
#include <ostream>
#include <type_traits>

#include <Eigen/Core>

#include "qreflex/errors.hpp"

namespace qreflex {

/// Default absolute tolerance for comparisons of unit-scale scalars.
inline constexpr double kScalarTol = 1e-12;

/// Real quaternion w + x i + y j + z k with Hamilton's convention ij = k.
template <typename T>
struct Quaternion {
  static_assert(std::is_floating_point_v<T>, "Quaternion needs a real floating-point type");

  using value_type = T;

  T w{0}, x{0}, y{0}, z{0};

  constexpr Quaternion() = default;
  // Implicit: the reals embed in H as the centre of the algebra.
  constexpr Quaternion(T re) : w(re) {}
  constexpr Quaternion(T w_, T x_, T y_, T z_) : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion k() { return {0, 0, 0, 1}; }

  constexpr T real() const { return w; }
  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  constexpr T norm2() const { return w * w + x * x + y * y + z * z; }
  T abs() const { return std::sqrt(norm2()); }
  /// Modulus of the vector part (x, y, z).
  T vec_abs() const { return std::sqrt(x * x + y * y + z * z); }
  bool is_finite() const {
    return std::isfinite(w) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
  bool is_zero() const { return w == 0 && x == 0 && y == 0 && z == 0; }

  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(const Quaternion& o) { return *this = *this * o; }
  constexpr Quaternion& operator*=(T s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }
  constexpr Quaternion& operator/=(T s) {
    w /= s; x /= s; y /= s; z /= s;
    return *this;
  }

  friend constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }

  /// Hamilton product; not commutative.
  friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }
  friend constexpr Quaternion operator*(Quaternion a, T s) { return a *= s; }
  friend constexpr Quaternion operator*(T s, Quaternion a) { return a *= s; }
  friend constexpr Quaternion operator/(Quaternion a, T s) { return a /= s; }

  friend constexpr bool operator==(const Quaternion& a, const Quaternion& b) {
    return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
  }
  friend constexpr bool operator!=(const Quaternion& a, const Quaternion& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '(' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ')';
  }
};

using Quaterniond = Quaternion<double>;

template <typename T>
constexpr Quaternion<T> conj(const Quaternion<T>& q) { return q.conj(); }

template <typename T>
T abs(const Quaternion<T>& q) { return q.abs(); }

/// Multiplicative inverse conj(q)/|q|^2. Throws DomainError for q = 0.
template <typename T>
Quaternion<T> inverse(const Quaternion<T>& q) {
  const T n2 = q.norm2();
  if (!(n2 > 0)) throw DomainError("inverse of the zero quaternion");
  return q.conj() / n2;
}

/// Distance |a - b| in the Euclidean metric of R^4.
template <typename T>
T distance(const Quaternion<T>& a, const Quaternion<T>& b) { return (a - b).abs(); }

/// Complex number in the closed upper half-plane: the canonical representative
/// of a right-eigenvalue similarity class.
template <typename T>
class StandardEigenvalue {
 public:
  StandardEigenvalue() = default;
  StandardEigenvalue(T re, T im) : re_(re), im_(im) {
    if (!std::isfinite(re) || !std::isfinite(im))
      throw DomainError("standard eigenvalue must be finite");
    if (im < 0) throw DomainError("standard eigenvalue needs a nonnegative imaginary part");
  }

  T re() const { return re_; }
  T im() const { return im_; }
  T abs() const { return std::hypot(re_, im_); }
  bool is_zero() const { return re_ == 0 && im_ == 0; }
  std::complex<T> as_complex() const { return {re_, im_}; }
  Quaternion<T> as_quaternion() const { return {re_, im_, 0, 0}; }

  friend bool operator==(const StandardEigenvalue&, const StandardEigenvalue&) = default;

 private:
  T re_{0};
  T im_{0};
};

/// Maps q to re(q) + |vec(q)| i, the unique complex member of its similarity orbit
/// {w^{-1} q w} with nonnegative imaginary part.
template <typename T>
StandardEigenvalue<T> standardize(const Quaternion<T>& q) {
  return {q.w, q.vec_abs()};
}

/// Orbit membership is decided by the complete invariants (real part, |vec|).
template <typename T>
bool same_similarity_orbit(const Quaternion<T>& a, const Quaternion<T>& b,
                           T tol = static_cast<T>(kScalarTol)) {
  if (tol < 0) throw DomainError("tolerance must be nonnegative");
  return std::abs(a.w - b.w) <= tol && std::abs(a.vec_abs() - b.vec_abs()) <= tol;
}

/// Unit quaternion u with u q u^{-1} = standardize(q). Because
/// A z = z q  <=>  A (z u^{-1}) = (z u^{-1}) (u q u^{-1}), right-multiplying an
/// eigenvector by conj(u) moves the eigenpair onto the standard representative.
template <typename T>
Quaternion<T> standardizing_rotation(const Quaternion<T>& q) {
  const T v = q.vec_abs();
  if (v == 0) return Quaternion<T>(1);
  // Rotation taking the unit axis a = vec(q)/|vec(q)| onto e_i.
  const T ax = q.x / v, ay = q.y / v, az = q.z / v;
  const T c = ax;  // a . e_i
  if (c < T(-1) + T(1e-12)) {
    // Antipodal: half turn about any axis orthogonal to e_i.
    return {0, 0, 1, 0};
  }
  // u = (1 + a.b, a x b) normalised, with b = e_i: a x b = (0, az, -ay).
  Quaternion<T> u{1 + c, 0, az, -ay};
  return u / u.abs();
}

}  // namespace qreflex

namespace Eigen {

template <typename T>
struct NumTraits<qreflex::Quaternion<T>> : GenericNumTraits<qreflex::Quaternion<T>> {
  using Real = T;
  using NonInteger = qreflex::Quaternion<T>;
  using Literal = qreflex::Quaternion<T>;
  using Nested = qreflex::Quaternion<T>;
  enum {
    // Kept non-complex so Eigen never applies its complex-only shortcuts; the
    // conjugate transpose is provided by qreflex::adjoint.
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 0,
    ReadCost = 4,
    AddCost = 4,
    MulCost = 16
  };
  static inline Real epsilon() { return NumTraits<T>::epsilon(); }
  static inline Real dummy_precision() { return NumTraits<T>::dummy_precision(); }
  static inline int digits10() { return NumTraits<T>::digits10(); }
};

template <typename T, typename BinaryOp>
struct ScalarBinaryOpTraits<qreflex::Quaternion<T>, T, BinaryOp> {
  using ReturnType = qreflex::Quaternion<T>;
};
template <typename T, typename BinaryOp>
struct ScalarBinaryOpTraits<T, qreflex::Quaternion<T>, BinaryOp> {
  using ReturnType = qreflex::Quaternion<T>;
};

}  // namespace Eigen

#endif  // QREFLEX_QUATERNION_HPP
