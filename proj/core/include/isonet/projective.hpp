#pragma once

#include <array>
#include <span>
#include <vector>

#include "isonet/quaternion.hpp"

namespace isonet {

// Column vector in H^2, a right H-module.
struct HVector {
  Quaternion upper;
  Quaternion lower;

  double norm2() const { return upper.norm2() + lower.norm2(); }
  double norm() const { return std::sqrt(norm2()); }
  double max_abs() const { return std::max(upper.norm(), lower.norm()); }
};

inline HVector operator*(const HVector& v, const Quaternion& s) { return {v.upper * s, v.lower * s}; }
inline HVector operator*(const HVector& v, double s) { return {v.upper * s, v.lower * s}; }
inline HVector operator+(const HVector& a, const HVector& b) { return {a.upper + b.upper, a.lower + b.lower}; }
inline HVector operator-(const HVector& a, const HVector& b) { return {a.upper - b.upper, a.lower - b.lower}; }

// Row covector in (H^2)*, a left H-module; nu(v) = left*upper + right*lower.
struct HCovector {
  Quaternion left;
  Quaternion right;

  Quaternion operator()(const HVector& v) const { return left * v.upper + right * v.lower; }
  double norm() const { return std::sqrt(left.norm2() + right.norm2()); }
};

inline HCovector operator*(const Quaternion& s, const HCovector& c) { return {s * c.left, s * c.right}; }
inline HCovector operator+(const HCovector& a, const HCovector& b) { return {a.left + b.left, a.right + b.right}; }
inline HCovector operator-(const HCovector& a, const HCovector& b) { return {a.left - b.left, a.right - b.right}; }
inline Quaternion operator*(const HCovector& c, const HVector& v) { return c(v); }

struct QuatMatrix2 {
  Quaternion a11, a12, a21, a22;

  static QuatMatrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static QuatMatrix2 zero() { return {0.0, 0.0, 0.0, 0.0}; }
  // Rank one matrix v * nu.
  static QuatMatrix2 outer(const HVector& v, const HCovector& nu) {
    return {v.upper * nu.left, v.upper * nu.right, v.lower * nu.left, v.lower * nu.right};
  }

  HVector column1() const { return {a11, a21}; }
  HVector column2() const { return {a12, a22}; }
  double max_abs() const;
  double frobenius() const;
  bool finite() const { return a11.finite() && a12.finite() && a21.finite() && a22.finite(); }
};

QuatMatrix2 operator*(const QuatMatrix2& a, const QuatMatrix2& b);
QuatMatrix2 operator+(const QuatMatrix2& a, const QuatMatrix2& b);
QuatMatrix2 operator-(const QuatMatrix2& a, const QuatMatrix2& b);
QuatMatrix2 operator*(double s, const QuatMatrix2& a);
HVector operator*(const QuatMatrix2& a, const HVector& v);
HCovector operator*(const HCovector& nu, const QuatMatrix2& a);

// Throws Error(SingularMatrix).
QuatMatrix2 inverse(const QuatMatrix2& m);
// Real (Study) determinant; zero iff m is singular.
double study_determinant(const QuatMatrix2& m);
// Conjugate transpose.
QuatMatrix2 adjoint(const QuatMatrix2& m);
// m / max_abs(m); matrices act projectively so this is harmless.
QuatMatrix2 renormalized(const QuatMatrix2& m);
// Distance of a and b as elements of PGl(2,H) (real scale quotiented out).
double projective_matrix_distance(const QuatMatrix2& a, const QuatMatrix2& b);

// Point of HP^1 stored through a representative whose largest entry equals 1.
class HPoint {
 public:
  HPoint() : rep_{1.0, 0.0} {}
  explicit HPoint(const HVector& v);

  static HPoint from_affine(const Quaternion& q) { return HPoint(HVector{q, 1.0}); }
  static HPoint infinity() { return HPoint(); }

  const HVector& rep() const { return rep_; }
  // Image on the round S^4 in R^5.
  std::array<double, 5> chordal() const;

 private:
  HVector rep_;
};

// Euclidean distance of the images on the round S^4 (at most 2).
double projective_distance(const HPoint& p, const HPoint& q);

// Left line of covectors vanishing on p.
HCovector annihilator(const HPoint& p);

struct AffineChart {
  HVector v0;
  HVector vinf;
  HCovector nu0;
  HCovector nuinf;

  static AffineChart standard();
  // Pseudo-dual covectors are computed from the given basis.
  static AffineChart from_basis(const HVector& v0, const HVector& vinf);
  // Chart with infinity at p and zero at the antipode of p.
  static AffineChart with_infinity_at(const HPoint& p);

  // Matrix sending the chart basis to the standard one (rows nu0, nuinf).
  QuatMatrix2 to_standard() const { return {nu0.left, nu0.right, nuinf.left, nuinf.right}; }
  // max deviation of v0 nuinf + vinf nu0 from the identity
  double pseudo_duality_residual() const;
};

// Stereographic projection p -> (nu0 v)(nuinf v)^{-1}; throws PointAtInfinity.
Quaternion stereo_project(const AffineChart& chart, const HPoint& p);
HPoint lift(const AffineChart& chart, const Quaternion& q);
HVector lift_vector(const AffineChart& chart, const Quaternion& q);

// Chart whose infinity is far (chordally) from all given points.
AffineChart safe_chart(std::span<const HPoint> points);

struct NormalizedCrossRatio {
  double re = 0.0;
  double im = 0.0;
};

NormalizedCrossRatio normalize_cross_ratio(const Quaternion& q);
// Quaternionic cross ratio, defined up to conjugation.
Quaternion cross_ratio_raw(const HPoint& p1, const HPoint& p2, const HPoint& p3, const HPoint& p4);
NormalizedCrossRatio cross_ratio(const HPoint& p1, const HPoint& p2, const HPoint& p3, const HPoint& p4);
Quaternion affine_cross_ratio(const Quaternion& p1, const Quaternion& p2, const Quaternion& p3,
                              const Quaternion& p4);

// The point x with [p1, p2, x, p4] = q for real q.
HPoint solve_fourth_point(const HPoint& p1, const HPoint& p2, const HPoint& p4, double q);

HPoint mobius_apply(const QuatMatrix2& m, const HPoint& p);

struct HermitianForm {
  double s11 = 0.0;
  double s22 = 0.0;
  Quaternion s12;

  double det() const { return s11 * s22 - s12.norm2(); }
  // The 3-sphere Im H + infinity.
  static HermitianForm imaginary_sphere() { return {0.0, 0.0, 1.0}; }
};

Quaternion hermitian_eval(const HermitianForm& s, const HVector& v, const HVector& w);
HermitianForm sphere_transform(const QuatMatrix2& m, const HermitianForm& s);
// |s(v,v)| scaled by |v|^2 and the size of s; zero iff p lies on the null cone.
double form_value(const HermitianForm& s, const HPoint& p);

// Lift of p into the six dimensional model space (|x|^2, |y|^2, x conj(y)), unit length.
std::array<double, 6> sphere_lift(const HPoint& p);
// sigma_{k+1}/sigma_1 of the lifted points; small iff they lie on a
// (k-2)-sphere (k = 3 circle, k = 4 two-sphere, k = 5 three-sphere).
double sphere_rank_residual(std::span<const HPoint> points, int k);

struct MobiusFit {
  QuatMatrix2 map;
  double residual = 0.0;  // max projective distance over the anchors
};
// Least squares Moebius map sending from[i] to to[i]; needs at least 5 anchors.
MobiusFit fit_mobius(std::span<const HPoint> from, std::span<const HPoint> to);

}  // namespace isonet
