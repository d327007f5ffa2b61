#include "isonet/projective.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <limits>

#include "isonet/error.hpp"

namespace isonet {

double QuatMatrix2::max_abs() const {
  return std::max({a11.norm(), a12.norm(), a21.norm(), a22.norm()});
}

double QuatMatrix2::frobenius() const {
  return std::sqrt(a11.norm2() + a12.norm2() + a21.norm2() + a22.norm2());
}

QuatMatrix2 operator*(const QuatMatrix2& a, const QuatMatrix2& b) {
  return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
          a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

QuatMatrix2 operator+(const QuatMatrix2& a, const QuatMatrix2& b) {
  return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
}

QuatMatrix2 operator-(const QuatMatrix2& a, const QuatMatrix2& b) {
  return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
}

QuatMatrix2 operator*(double s, const QuatMatrix2& a) {
  return {s * a.a11, s * a.a12, s * a.a21, s * a.a22};
}

HVector operator*(const QuatMatrix2& a, const HVector& v) {
  return {a.a11 * v.upper + a.a12 * v.lower, a.a21 * v.upper + a.a22 * v.lower};
}

HCovector operator*(const HCovector& nu, const QuatMatrix2& a) {
  return {nu.left * a.a11 + nu.right * a.a21, nu.left * a.a12 + nu.right * a.a22};
}

namespace {

QuatMatrix2 swap_rows(const QuatMatrix2& m) { return {m.a21, m.a22, m.a11, m.a12}; }
QuatMatrix2 swap_cols(const QuatMatrix2& m) { return {m.a12, m.a11, m.a22, m.a21}; }

// Pivot so that the largest entry sits at (1,1).
struct Pivoted {
  QuatMatrix2 m;
  bool rows = false;
  bool cols = false;
};

Pivoted pivot(const QuatMatrix2& m) {
  const double e[4] = {m.a11.norm(), m.a12.norm(), m.a21.norm(), m.a22.norm()};
  const int k = static_cast<int>(std::max_element(e, e + 4) - e);
  Pivoted p{m};
  p.rows = k >= 2;
  p.cols = k % 2 == 1;
  if (p.rows) p.m = swap_rows(p.m);
  if (p.cols) p.m = swap_cols(p.m);
  return p;
}

}  // namespace

double study_determinant(const QuatMatrix2& m) {
  const Pivoted p = pivot(m);
  const double scale = p.m.a11.norm();
  if (scale == 0.0) return 0.0;
  const Quaternion ainv = p.m.a11.conj() / p.m.a11.norm2();
  const Quaternion schur = p.m.a22 - p.m.a21 * ainv * p.m.a12;
  return p.m.a11.norm2() * schur.norm2();
}

QuatMatrix2 inverse(const QuatMatrix2& m) {
  if (!m.finite()) throw Error(ErrorKind::SingularMatrix, "non-finite matrix entries");
  const Pivoted p = pivot(m);
  const double scale = p.m.a11.norm();
  if (!(scale > 0.0)) throw Error(ErrorKind::SingularMatrix, "zero matrix");
  const Quaternion ainv = p.m.a11.conj() / p.m.a11.norm2();
  const Quaternion schur = p.m.a22 - p.m.a21 * ainv * p.m.a12;
  if (!(schur.norm() > 1e-13 * scale)) throw Error(ErrorKind::SingularMatrix, "rank deficient");
  const Quaternion sinv = schur.conj() / schur.norm2();
  const Quaternion t12 = ainv * p.m.a12;  // a^{-1} b
  const Quaternion t21 = p.m.a21 * ainv;  // c a^{-1}
  QuatMatrix2 r{ainv + t12 * sinv * t21, -(t12 * sinv), -(sinv * t21), sinv};
  // (Pr M Pc)^{-1} = Pc^{-1} M^{-1} Pr^{-1}: undo the row swap on columns and vice versa.
  if (p.cols) r = swap_rows(r);
  if (p.rows) r = swap_cols(r);
  return r;
}

QuatMatrix2 adjoint(const QuatMatrix2& m) {
  return {m.a11.conj(), m.a21.conj(), m.a12.conj(), m.a22.conj()};
}

QuatMatrix2 renormalized(const QuatMatrix2& m) {
  const double s = m.max_abs();
  if (!(s > 0.0) || !std::isfinite(s)) throw Error(ErrorKind::SingularMatrix, "cannot renormalize");
  return (1.0 / s) * m;
}

double projective_matrix_distance(const QuatMatrix2& a, const QuatMatrix2& b) {
  const double na = a.frobenius();
  const double nb = b.frobenius();
  if (!(na > 0.0) || !(nb > 0.0)) return std::numeric_limits<double>::infinity();
  const QuatMatrix2 ua = (1.0 / na) * a;
  const QuatMatrix2 ub = (1.0 / nb) * b;
  return std::min((ua - ub).frobenius(), (ua + ub).frobenius());
}

HPoint::HPoint(const HVector& v) {
  const double nu = v.upper.norm();
  const double nl = v.lower.norm();
  const double big = std::max(nu, nl);
  if (!v.upper.finite() || !v.lower.finite() || !(big > std::numeric_limits<double>::min())) {
    throw Error(ErrorKind::DegeneratePoint, "homogeneous representative is zero or not finite");
  }
  if (nl >= nu) {
    rep_ = {v.upper * inverse(v.lower, 0.0), 1.0};
  } else {
    rep_ = {1.0, v.lower * inverse(v.upper, 0.0)};
  }
}

std::array<double, 5> HPoint::chordal() const {
  const double a = rep_.upper.norm2();
  const double b = rep_.lower.norm2();
  const double s = a + b;
  const Quaternion c = 2.0 * (rep_.upper * rep_.lower.conj());
  return {(a - b) / s, c.w / s, c.x / s, c.y / s, c.z / s};
}

double projective_distance(const HPoint& p, const HPoint& q) {
  const auto a = p.chordal();
  const auto b = q.chordal();
  double s = 0.0;
  for (int k = 0; k < 5; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

HCovector annihilator(const HPoint& p) {
  const HVector& v = p.rep();
  if (v.lower.norm() >= v.upper.norm()) {
    return {1.0, -(v.upper * inverse(v.lower, 0.0))};
  }
  return {-(v.lower * inverse(v.upper, 0.0)), 1.0};
}

AffineChart AffineChart::standard() {
  return {HVector{0.0, 1.0}, HVector{1.0, 0.0}, HCovector{1.0, 0.0}, HCovector{0.0, 1.0}};
}

AffineChart AffineChart::from_basis(const HVector& v0, const HVector& vinf) {
  const QuatMatrix2 p{vinf.upper, v0.upper, vinf.lower, v0.lower};
  const QuatMatrix2 q = inverse(p);
  return {v0, vinf, HCovector{q.a11, q.a12}, HCovector{q.a21, q.a22}};
}

AffineChart AffineChart::with_infinity_at(const HPoint& p) {
  const HVector& v = p.rep();
  HVector w;
  // w is orthogonal to v for the standard hermitian product, i.e. the antipode.
  if (v.upper.norm() >= v.lower.norm()) {
    w = {-(inverse(v.upper.conj(), 0.0) * v.lower.conj()), 1.0};
  } else {
    w = {1.0, -(inverse(v.lower.conj(), 0.0) * v.upper.conj())};
  }
  return from_basis(w, v);
}

double AffineChart::pseudo_duality_residual() const {
  const QuatMatrix2 s = QuatMatrix2::outer(v0, nuinf) + QuatMatrix2::outer(vinf, nu0);
  return (s - QuatMatrix2::identity()).max_abs();
}

Quaternion stereo_project(const AffineChart& chart, const HPoint& p) {
  const Quaternion den = chart.nuinf(p.rep());
  if (!(den.norm() > kEpsZero * chart.nuinf.norm() * p.rep().norm())) {
    throw Error(ErrorKind::PointAtInfinity, "point is at infinity of the chart");
  }
  return chart.nu0(p.rep()) * inverse(den, 0.0);
}

HVector lift_vector(const AffineChart& chart, const Quaternion& q) {
  return chart.v0 + chart.vinf * q;
}

HPoint lift(const AffineChart& chart, const Quaternion& q) { return HPoint(lift_vector(chart, q)); }

AffineChart safe_chart(std::span<const HPoint> points) {
  static const HPoint candidates[] = {
      HPoint::infinity(),          HPoint::from_affine(0.0),
      HPoint::from_affine(1.0),    HPoint::from_affine(-1.0),
      HPoint::from_affine(Quaternion::i()), HPoint::from_affine(-Quaternion::i()),
      HPoint::from_affine(Quaternion::j()), HPoint::from_affine(-Quaternion::j()),
      HPoint::from_affine(Quaternion::k()), HPoint::from_affine(-Quaternion::k())};
  double best = -1.0;
  int best_k = 0;
  for (int k = 0; k < 10; ++k) {
    double d = std::numeric_limits<double>::infinity();
    for (const HPoint& p : points) d = std::min(d, projective_distance(p, candidates[k]));
    // keep the standard chart when it is good enough
    if (d > best + 1e-12) {
      best = d;
      best_k = k;
    }
  }
  if (best_k == 0) return AffineChart::standard();
  return AffineChart::with_infinity_at(candidates[best_k]);
}

NormalizedCrossRatio normalize_cross_ratio(const Quaternion& q) { return {q.w, q.imag_norm()}; }

Quaternion cross_ratio_raw(const HPoint& p1, const HPoint& p2, const HPoint& p3, const HPoint& p4) {
  const HCovector n1 = annihilator(p1);
  const HCovector n3 = annihilator(p3);
  const HVector& v2 = p2.rep();
  const HVector& v4 = p4.rep();
  const Quaternion a = n1(v2);
  const Quaternion b = n3(v2);
  const Quaternion c = n3(v4);
  const Quaternion d = n1(v4);
  const double scale = std::max({a.norm(), b.norm(), c.norm(), d.norm(), 1e-300});
  try {
    return a * inverse(b, scale) * c * inverse(d, scale);
  } catch (const Error&) {
    throw Error(ErrorKind::CoincidentPoints, "consecutive points of the cross ratio coincide");
  }
}

NormalizedCrossRatio cross_ratio(const HPoint& p1, const HPoint& p2, const HPoint& p3, const HPoint& p4) {
  return normalize_cross_ratio(cross_ratio_raw(p1, p2, p3, p4));
}

Quaternion affine_cross_ratio(const Quaternion& p1, const Quaternion& p2, const Quaternion& p3,
                              const Quaternion& p4) {
  return (p1 - p2) * inverse(p2 - p3, 0.0) * (p3 - p4) * inverse(p4 - p1, 0.0);
}

HPoint solve_fourth_point(const HPoint& p1, const HPoint& p2, const HPoint& p4, double q) {
  const HPoint pts[] = {p1, p2, p4};
  const AffineChart chart = safe_chart(pts);
  const Quaternion x1 = stereo_project(chart, p1);
  const Quaternion x2 = stereo_project(chart, p2);
  const Quaternion x4 = stereo_project(chart, p4);
  const Quaternion a = x1 - x2;
  const Quaternion b = x4 - x1;
  const double scale = std::max({x1.norm(), x2.norm(), x4.norm(), 1.0});
  Quaternion k;
  try {
    k = inverse(a, scale) * q * b;
  } catch (const Error&) {
    throw Error(ErrorKind::CoincidentPoints, "p1 and p2 coincide");
  }
  // x = (x2 k + x4)(1 + k)^{-1}, kept homogeneous.
  return HPoint(chart.vinf * (x2 * k + x4) + chart.v0 * (1.0 + k));
}

HPoint mobius_apply(const QuatMatrix2& m, const HPoint& p) {
  if (!(study_determinant(m) > 0.0)) throw Error(ErrorKind::SingularMatrix, "Moebius matrix is singular");
  const HVector v = m * p.rep();
  if (!(v.max_abs() > 1e-13 * m.max_abs() * p.rep().max_abs())) {
    throw Error(ErrorKind::SingularMatrix, "Moebius matrix is singular");
  }
  return HPoint(v);
}

Quaternion hermitian_eval(const HermitianForm& s, const HVector& v, const HVector& w) {
  const Quaternion a = v.upper.conj();
  const Quaternion b = v.lower.conj();
  return a * s.s11 * w.upper + a * s.s12 * w.lower + b * s.s12.conj() * w.upper + b * s.s22 * w.lower;
}

HermitianForm sphere_transform(const QuatMatrix2& m, const HermitianForm& s) {
  const QuatMatrix2 mi = inverse(m);
  const QuatMatrix2 sm{s.s11, s.s12, s.s12.conj(), s.s22};
  const QuatMatrix2 r = adjoint(mi) * sm * mi;
  // r is hermitian up to rounding; symmetrize.
  return {r.a11.w, r.a22.w, 0.5 * (r.a12 + r.a21.conj())};
}

double form_value(const HermitianForm& s, const HPoint& p) {
  const double size = std::max({std::abs(s.s11), std::abs(s.s22), s.s12.norm()});
  const Quaternion val = hermitian_eval(s, p.rep(), p.rep());
  return val.norm() / (size * p.rep().norm2());
}

std::array<double, 6> sphere_lift(const HPoint& p) {
  const HVector& v = p.rep();
  const Quaternion c = v.upper * v.lower.conj();
  std::array<double, 6> r{v.upper.norm2(), v.lower.norm2(), c.w, c.x, c.y, c.z};
  double n = 0.0;
  for (double x : r) n += x * x;
  n = std::sqrt(n);
  for (double& x : r) x /= n;
  return r;
}

double sphere_rank_residual(std::span<const HPoint> points, int k) {
  if (static_cast<int>(points.size()) <= k) return 0.0;
  Eigen::MatrixXd a(points.size(), 6);
  for (std::size_t r = 0; r < points.size(); ++r) {
    const auto l = sphere_lift(points[r]);
    for (int c = 0; c < 6; ++c) a(r, c) = l[c];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  if (k >= s.size()) return 0.0;
  return s(k) / s(0);
}

MobiusFit fit_mobius(std::span<const HPoint> from, std::span<const HPoint> to) {
  if (from.size() != to.size() || from.size() < 5) {
    throw Error(ErrorKind::InvalidArgument, "Moebius fit needs at least 5 anchor pairs");
  }
  const Quaternion units[4] = {1.0, Quaternion::i(), Quaternion::j(), Quaternion::k()};
  Eigen::MatrixXd a(4 * from.size(), 16);
  for (std::size_t r = 0; r < from.size(); ++r) {
    const HCovector omega = annihilator(to[r]);
    const double on = omega.norm();
    const HVector& v = from[r].rep();
    for (int e = 0; e < 4; ++e) {
      for (int u = 0; u < 4; ++u) {
        QuatMatrix2 basis = QuatMatrix2::zero();
        Quaternion* entry[4] = {&basis.a11, &basis.a12, &basis.a21, &basis.a22};
        *entry[e] = units[u];
        const Quaternion val = omega(basis * v) / on;
        const int col = 4 * e + u;
        a(4 * r + 0, col) = val.w;
        a(4 * r + 1, col) = val.x;
        a(4 * r + 2, col) = val.y;
        a(4 * r + 3, col) = val.z;
      }
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd x = svd.matrixV().col(15);
  MobiusFit fit;
  Quaternion* entry[4] = {&fit.map.a11, &fit.map.a12, &fit.map.a21, &fit.map.a22};
  for (int e = 0; e < 4; ++e) *entry[e] = Quaternion(x(4 * e), x(4 * e + 1), x(4 * e + 2), x(4 * e + 3));
  fit.map = renormalized(fit.map);
  for (std::size_t r = 0; r < from.size(); ++r) {
    double d = 2.0;
    try {
      d = projective_distance(mobius_apply(fit.map, from[r]), to[r]);
    } catch (const Error&) {
    }
    fit.residual = std::max(fit.residual, d);
  }
  return fit;
}

}  // namespace isonet
