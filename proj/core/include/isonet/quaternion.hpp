#pragma once

#include <cmath>
#include <complex>
#include <iosfwd>

namespace isonet {

using Complex = std::complex<double>;

// Hamilton quaternion w + x i + y j + z k with ij = k.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double real) : w(real) {}  // NOLINT: reals embed implicitly
  constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion k() { return {0, 0, 0, 1}; }

  constexpr double real() const { return w; }
  constexpr Quaternion imag() const { return {0, x, y, z}; }
  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }
  double imag_norm() const { return std::sqrt(x * x + y * y + z * z); }
  bool finite() const {
    return std::isfinite(w) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a *= (1.0 / s); }

constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
  return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
          p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
          p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
          p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

constexpr bool operator==(const Quaternion& a, const Quaternion& b) {
  return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
}

inline double abs(const Quaternion& q) { return q.norm(); }

// Relative threshold below which a quaternion counts as zero.
inline constexpr double kEpsZero = 1e-13;

// Throws Error(ZeroDivision) when |q| <= kEpsZero * scale.
Quaternion inverse(const Quaternion& q, double scale = 1.0);

// p * q^{-1} and p^{-1} * q without forming the inverse twice.
Quaternion right_divide(const Quaternion& p, const Quaternion& q, double scale = 1.0);
Quaternion left_divide(const Quaternion& q, const Quaternion& p, double scale = 1.0);

struct ImaginaryQuaternion {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion to_quaternion() const { return {0, x, y, z}; }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  static constexpr ImaginaryQuaternion from(const Quaternion& q) { return {q.x, q.y, q.z}; }
};

constexpr ImaginaryQuaternion operator+(const ImaginaryQuaternion& a, const ImaginaryQuaternion& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}
constexpr ImaginaryQuaternion operator-(const ImaginaryQuaternion& a, const ImaginaryQuaternion& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}
constexpr ImaginaryQuaternion operator*(double s, const ImaginaryQuaternion& a) {
  return {s * a.x, s * a.y, s * a.z};
}

// c -> re + im i, a ring homomorphism onto span{1, i}.
constexpr Quaternion to_quaternion(const Complex& c) { return {c.real(), c.imag(), 0, 0}; }
// c -> c j = re j + im k.
constexpr Quaternion complex_to_Cj(const Complex& c) { return {0, 0, c.real(), c.imag()}; }
// Inverse of complex_to_Cj on span{j, k}.
constexpr Complex Cj_to_complex(const Quaternion& q) { return {q.y, q.z}; }

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

}  // namespace isonet
