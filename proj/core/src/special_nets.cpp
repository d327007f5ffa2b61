#include "isonet/special_nets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "isonet/generators.hpp"
#include "isonet/integrate.hpp"

namespace isonet {

namespace {

constexpr double kMinimalClosureTol = 1e-8;

const Quaternion kI = Quaternion::i();
const Quaternion kJ = Quaternion::j();

AffineNet times_j(const HolomorphicNet& g) {
  AffineNet out{Grid<Quaternion>(g.window()), AffineChart::standard()};
  g.values.for_each([&](int m, int n, const Complex& z) { out.values(m, n) = to_quaternion(z) * kJ; });
  return out;
}

// -j h, the Christoffel transform of g j.
AffineNet minus_j_times(const HolomorphicNet& h) {
  AffineNet out{Grid<Quaternion>(h.window()), AffineChart::standard()};
  h.values.for_each([&](int m, int n, const Complex& z) { out.values(m, n) = -(kJ * to_quaternion(z)); });
  return out;
}

void check_pair_window(const HolomorphicNet& g, const HolomorphicNet& h) {
  if (!(g.window() == h.window())) throw Error(ErrorKind::NotChristoffelPair, "g and h live on different windows");
}

Grid<ImaginaryQuaternion> imaginary_grid(const AffineNet& f) {
  Grid<ImaginaryQuaternion> out(f.window());
  f.values.for_each([&](int m, int n, const Quaternion& x) { out(m, n) = ImaginaryQuaternion::from(x); });
  return out;
}

}  // namespace

AffineNet HolomorphicNet::affine() const {
  AffineNet out{Grid<Quaternion>(window()), AffineChart::standard()};
  values.for_each([&](int m, int n, const Complex& z) { out.values(m, n) = to_quaternion(z); });
  return out;
}

HolomorphicNet holomorphic_from_affine(const AffineNet& net) {
  HolomorphicNet out{Grid<Complex>(net.window())};
  net.values.for_each([&](int m, int n, const Quaternion& x) {
    if (std::hypot(x.y, x.z) > 1e-12 * std::max(1.0, x.norm())) {
      throw Error(ErrorKind::InvalidArgument, "value is not complex", GridIndex{m, n});
    }
    out.values(m, n) = Complex(x.w, x.x);
  });
  return out;
}

std::pair<HolomorphicNet, HolomorphicNet> catenoid_pair(int N, const GridWindow& w) {
  if (N < 4) throw Error(ErrorKind::InvalidArgument, "catenoid pair needs N >= 4");
  w.validate();
  HolomorphicNet g{Grid<Complex>(w)};
  HolomorphicNet h{Grid<Complex>(w)};
  const double s = 2.0 * std::numbers::pi / N;
  g.values.for_each([&](int m, int n, const Complex&) {
    g.values(m, n) = std::exp(Complex(s * m, s * n));
    h.values(m, n) = std::exp(Complex(-s * m, -s * n));
  });
  return {std::move(g), std::move(h)};
}

CrossRatioFactorization holomorphic_factorization(const HolomorphicNet& g, const HolomorphicNet& h) {
  check_pair_window(g, h);
  return make_christoffel_pair(g.affine(), h.affine()).factorization;
}

AffineNet MinimalNet::surface_net() const {
  AffineNet out{Grid<Quaternion>(surface.window()), AffineChart::standard()};
  surface.for_each([&](int m, int n, const ImaginaryQuaternion& x) { out.values(m, n) = x.to_quaternion(); });
  return out;
}

namespace {

double purity(const Grid<Quaternion>& f) {
  double re = 0.0;
  double size = 0.0;
  for (const auto& x : f.data()) {
    re = std::max(re, std::abs(x.w));
    size = std::max(size, x.norm());
  }
  return re / std::max(size, 1e-300);
}

}  // namespace

MinimalNet weierstrass_minimal(const HolomorphicNet& g, const HolomorphicNet& h) {
  holomorphic_factorization(g, h);  // throws NotChristoffelPair
  const GridWindow& w = g.window();
  auto frame = [&](int m, int n) { return kI - to_quaternion(g(m, n)) * kJ; };
  Grid<Quaternion> e1(w.edges1());
  Grid<Quaternion> e2(w.edges2());
  double scale = 0.0;
  e1.for_each([&](int m, int n, const Quaternion&) {
    e1(m, n) = 0.5 * (frame(m, n) * kJ * to_quaternion(h(m + 1, n) - h(m, n)) * frame(m + 1, n));
    scale = std::max(scale, e1(m, n).norm());
  });
  e2.for_each([&](int m, int n, const Quaternion&) {
    e2(m, n) = 0.5 * (frame(m, n) * kJ * to_quaternion(h(m, n + 1) - h(m, n)) * frame(m, n + 1));
    scale = std::max(scale, e2(m, n).norm());
  });
  auto step_m = [&](int m, int n, const Quaternion& x, int dir) { return dir > 0 ? x + e1(m, n) : x - e1(m - 1, n); };
  auto step_n = [&](int m, int n, const Quaternion& x, int dir) { return dir > 0 ? x + e2(m, n) : x - e2(m, n - 1); };
  const Grid<Quaternion> f = integrate_center_out(w, Quaternion{}, step_m, step_n);
  MinimalNet out;
  out.closure_residual = face_residual(f, step_m, step_n, [&](const Quaternion& a, const Quaternion& b) {
    return (a - b).norm() / std::max(scale, 1e-300);
  });
  if (!(out.closure_residual <= kMinimalClosureTol)) {
    throw Error(ErrorKind::ClosureFailure,
                "Weierstrass form does not close (residual " + format_residual(out.closure_residual) + ")");
  }
  out.surface = Grid<ImaginaryQuaternion>(w);
  out.purity_residual = purity(f);
  f.for_each([&](int m, int n, const Quaternion& x) { out.surface(m, n) = ImaginaryQuaternion::from(x); });
  out.gauss = sphere_projection(g.affine());
  return out;
}

MinimalNet minimal_cousin(const HolomorphicNet& g) {
  const AffineNet n = sphere_projection(g.affine());
  const ChristoffelPair pair = christoffel(n);
  MinimalNet out;
  out.surface = imaginary_grid(pair.f_star);
  out.purity_residual = purity(pair.f_star.values);
  out.gauss = n;
  out.closure_residual = pair.closure_residual;
  return out;
}

double ComplexMatrix2::max_abs() const {
  return std::max({std::abs(c11), std::abs(c12), std::abs(c21), std::abs(c22)});
}

ComplexMatrix2 operator*(const ComplexMatrix2& a, const ComplexMatrix2& b) {
  return {a.c11 * b.c11 + a.c12 * b.c21, a.c11 * b.c12 + a.c12 * b.c22, a.c21 * b.c11 + a.c22 * b.c21,
          a.c21 * b.c12 + a.c22 * b.c22};
}

ComplexMatrix2 inverse(const ComplexMatrix2& a) {
  const Complex d = a.det();
  const double s = a.max_abs();
  if (!(std::abs(d) > kEpsZero * s * s)) throw Error(ErrorKind::SingularMatrix, "complex frame is singular");
  return {a.c22 / d, -a.c12 / d, -a.c21 / d, a.c11 / d};
}

ComplexMatrix2 h_step(const Complex& g, const Complex& dh, const Complex& g_next, double lambda) {
  return {1.0 + lambda * g * dh, -lambda * g * dh * g_next, lambda * dh, 1.0 - lambda * dh * g_next};
}

ComplexFrame integrate_H(const HolomorphicNet& g, const HolomorphicNet& h, double lambda) {
  check_pair_window(g, h);
  const GridWindow& w = g.window();
  w.validate();
  auto renorm = [](const ComplexMatrix2& x) {
    const double s = x.max_abs();
    return ComplexMatrix2{x.c11 / s, x.c12 / s, x.c21 / s, x.c22 / s};
  };
  auto x_step = [&](int m, int n) { return h_step(g(m, n), h(m + 1, n) - h(m, n), g(m + 1, n), lambda); };
  auto y_step = [&](int m, int n) { return h_step(g(m, n), h(m, n + 1) - h(m, n), g(m, n + 1), lambda); };
  auto step_m = [&](int m, int n, const ComplexMatrix2& t, int dir) {
    return renorm(dir > 0 ? t * x_step(m, n) : t * inverse(x_step(m - 1, n)));
  };
  auto step_n = [&](int m, int n, const ComplexMatrix2& t, int dir) {
    return renorm(dir > 0 ? t * y_step(m, n) : t * inverse(y_step(m, n - 1)));
  };
  ComplexFrame out{lambda, integrate_center_out(w, ComplexMatrix2::identity(), step_m, step_n), 0.0};
  out.residual = face_residual(out.values, step_m, step_n, [](const ComplexMatrix2& a, const ComplexMatrix2& b) {
    // both sides are normalized the same way, so no scale needs quotienting out
    const double s = std::max({a.max_abs(), b.max_abs(), 1e-300});
    return std::max({std::abs(a.c11 - b.c11), std::abs(a.c12 - b.c12), std::abs(a.c21 - b.c21),
                     std::abs(a.c22 - b.c22)}) / s;
  });
  if (!(out.residual <= 1e-6)) {
    throw Error(ErrorKind::ClosureFailure, "system H does not close (residual " + format_residual(out.residual) + ")");
  }
  return out;
}

QuatMatrix2 quaternionic(const ComplexMatrix2& t) {
  // diag(1, -j) tau diag(1, j)
  return {to_quaternion(t.c11), to_quaternion(t.c12) * kJ, -(kJ * to_quaternion(t.c21)),
          -(kJ * to_quaternion(t.c22) * kJ)};
}

TTransformFrame quaternionic_frame(const ComplexFrame& frame) {
  return TTransformFrame{frame.lambda, frame.values.map([](const ComplexMatrix2& t) { return quaternionic(t); }),
                         frame.residual};
}

double boundary_distance(const HPoint& p) {
  // chordal image of C j + infinity is the great 2-sphere {x_i-coordinate = 0, x_real = 0}
  const auto c = p.chordal();
  return std::hypot(c[1], c[2]);
}

ResidualStats s3_residual(const ProjectiveNet& net) {
  ResidualStats r;
  const HermitianForm s = HermitianForm::imaginary_sphere();
  net.values.for_each([&](int, int, const HPoint& p) { r.add(form_value(s, p)); });
  return r;
}

namespace {

void check_off_boundary(const ProjectiveNet& net) {
  net.values.for_each([&](int m, int n, const HPoint& p) {
    if (!(boundary_distance(p) > kBoundaryTol)) {
      throw Error(ErrorKind::BoundaryHit, "vertex lies on the boundary sphere", GridIndex{m, n});
    }
  });
}

}  // namespace

HorosphericalNet horospherical_from_gauss(const HolomorphicNet& g, const HolomorphicNet& h, double lambda,
                                          const ImaginaryQuaternion& p0) {
  if (lambda == 0.0) throw Error(ErrorKind::InvalidArgument, "horospherical nets need lambda != 0");
  if (!(std::abs(p0.x) > kBoundaryTol * std::max(1.0, p0.to_quaternion().norm()))) {
    throw Error(ErrorKind::BadBasePoint, "base point lies on the boundary sphere C j");
  }
  HorosphericalNet out;
  out.gauss_factorization = holomorphic_factorization(g, h);
  const ComplexFrame tau = integrate_H(g, h, -lambda);
  const HVector v{p0.to_quaternion(), 1.0};
  out.surface.values = Grid<HPoint>(g.window());
  tau.values.for_each([&](int m, int n, const ComplexMatrix2& t) {
    out.surface.values(m, n) = HPoint(quaternionic(inverse(t)) * v);
  });
  check_off_boundary(out.surface);
  out.gauss_hyperbolic = times_j(g);
  out.lambda = lambda;
  out.darboux_lambda = -lambda;
  out.g = g;
  out.h = h;
  return out;
}

HorosphericalNet bryant_cousin(const HolomorphicNet& g, const HolomorphicNet& h, double lambda) {
  if (lambda == 0.0) throw Error(ErrorKind::InvalidArgument, "horospherical nets need lambda != 0");
  HorosphericalNet out;
  const CrossRatioFactorization fact = holomorphic_factorization(g, h);
  const ComplexFrame tau = integrate_H(g, h, lambda);
  // J^{-1} (i, j) / sqrt 2, so that f = T^lambda (v0 + v_inf i) / sqrt 2 with T = J^{-1} tau J
  const double r = std::numbers::sqrt2 / 2.0;
  const HVector v{kI * r, Quaternion{r}};
  out.surface.values = Grid<HPoint>(g.window());
  out.gauss_hyperbolic = AffineNet{Grid<Quaternion>(g.window()), AffineChart::standard()};
  tau.values.for_each([&](int m, int n, const ComplexMatrix2& t) {
    out.surface.values(m, n) = HPoint(quaternionic(t) * v);
    const Complex den = t.c21 * g(m, n) + t.c22;
    if (!(std::abs(den) > kEpsZero * t.max_abs() * std::max(1.0, std::abs(g(m, n))))) {
      throw Error(ErrorKind::PointAtInfinity, "hyperbolic Gauss map reaches infinity", GridIndex{m, n});
    }
    out.gauss_hyperbolic.values(m, n) = complex_to_Cj((t.c11 * g(m, n) + t.c12) / den);
  });
  check_off_boundary(out.surface);
  out.gauss_factorization = fact.transported(lambda);
  out.lambda = lambda;
  out.darboux_lambda = -lambda;
  out.g = g;
  out.h = h;
  return out;
}

ResidualStats horospherical_darboux_residual(const HorosphericalNet& net) {
  return darboux_cross_ratio_residual(lift(net.gauss_hyperbolic), net.surface, net.gauss_factorization,
                                      net.darboux_lambda);
}

HorosphericalNet horospherical_t_transform(const HorosphericalNet& net, double mu) {
  const double nu = net.darboux_lambda;
  if (nu == 0.0 || mu == nu) throw Error(ErrorKind::SingularLambda, "mu must differ from the Darboux parameter");
  const ChristoffelPair pair = christoffel(net.gauss_hyperbolic, net.gauss_factorization, 0.0, kTransformedGate);
  const Connection c = build_connection(pair);
  const TTransformFrame t = integrate_T(c, mu);
  HorosphericalNet out = net;
  out.surface.values = Grid<HPoint>(net.surface.window());
  t.values.for_each([&](int m, int n, const QuatMatrix2& x) {
    // T^mu (1 - (mu/nu) n (phi n)^{-1} phi), phi annihilating the surface point
    const HVector v = c.base(m, n).rep();
    const HCovector phi = annihilator(net.surface(m, n));
    const QuatMatrix2 gauge =
        QuatMatrix2::identity() - (mu / nu) * QuatMatrix2::outer(v * inverse(phi(v), 0.0), phi);
    out.surface.values(m, n) = mobius_apply(x * gauge, net.surface(m, n));
  });
  out.gauss_hyperbolic = project(t_transform(c.base, t), AffineChart::standard());
  out.gauss_factorization = net.gauss_factorization.transported(mu);
  out.darboux_lambda = nu - mu;
  out.lambda = net.lambda + mu;
  return out;
}

Grid<ImaginaryQuaternion> gauss_coords(const ComplexFrame& frame, const HolomorphicNet& g) {
  Grid<ImaginaryQuaternion> out(frame.values.window());
  frame.values.for_each([&](int m, int n, const ComplexMatrix2& t) {
    const Complex den = t.c21 * g(m, n) + t.c22;
    if (!(std::abs(den) > kEpsZero * t.max_abs())) {
      throw Error(ErrorKind::ZeroDenominator, "Gauss map reaches infinity", GridIndex{m, n});
    }
    const Complex z = (t.c11 * g(m, n) + t.c12) / den;
    out(m, n) = {0.0, z.real(), z.imag()};
  });
  return out;
}

Grid<ImaginaryQuaternion> ccousin_coords(const ComplexFrame& frame) {
  Grid<ImaginaryQuaternion> out(frame.values.window());
  frame.values.for_each([&](int m, int n, const ComplexMatrix2& t) {
    const double den = std::norm(t.c21) + std::norm(t.c22);
    if (!(den > kEpsZero * t.max_abs() * t.max_abs())) {
      throw Error(ErrorKind::ZeroDenominator, "|tau21|^2 + |tau22|^2 vanishes", GridIndex{m, n});
    }
    const Complex w = t.c11 * std::conj(t.c21) + t.c12 * std::conj(t.c22);
    out(m, n) = {t.det().real() / den, w.real() / den, w.imag() / den};
  });
  return out;
}

Grid<ImaginaryQuaternion> poincare_ball(const Grid<ImaginaryQuaternion>& points) {
  Grid<ImaginaryQuaternion> out(points.window());
  points.for_each([&](int m, int n, const ImaginaryQuaternion& p) {
    const double den = (p.x + 1.0) * (p.x + 1.0) + p.y * p.y + p.z * p.z;
    if (!(den > kEpsZero)) throw Error(ErrorKind::ZeroDenominator, "point maps to infinity", GridIndex{m, n});
    out(m, n) = {(p.x + 1.0) / den, p.y / den, p.z / den};
  });
  return out;
}

DualCheckReport dual_check(const HorosphericalNet& f_sharp, const HorosphericalNet& f) {
  DualCheckReport r;
  const ChristoffelPair n_pair = make_christoffel_pair(times_j(f_sharp.g), minus_j_times(f_sharp.h));
  const Connection c = build_connection(n_pair);
  const ProjectiveNet n_sharp = t_transform(c.base, integrate_T(c, f.lambda));
  const ProjectiveNet n_lambda = lift(f.gauss_hyperbolic);
  n_sharp.values.for_each([&](int m, int n, const HPoint& p) {
    r.gauss_identity.add(projective_distance(p, n_lambda(m, n)));
  });
  r.sharp_darboux = horospherical_darboux_residual(f_sharp);
  r.bryant_darboux = horospherical_darboux_residual(f);
  return r;
}

}  // namespace isonet
