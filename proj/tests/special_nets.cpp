#include <doctest.h>

#include "isonet/generators.hpp"
#include "isonet/special_nets.hpp"
#include "isonet/suites.hpp"
#include "oracles.hpp"

using namespace isonet;

namespace {

const GridWindow kWin = GridWindow::symmetric(10, 10);
const std::vector<double> kSweep{-0.8, -0.117, -0.05, -0.025, 1e-7, 0.01, 0.025, 0.085, 0.25};

double qdist(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

}  // namespace

TEST_CASE("catenoid pair") {
  const auto [g, h] = catenoid_pair(20, kWin);
  CHECK(g.window() == kWin);
  g.values.for_each([&](int m, int n, const Complex& z) {
    const Complex ref = std::exp(Complex(2 * M_PI * m / 20, 2 * M_PI * n / 20));
    REQUIRE(std::abs(z - ref) < 1e-13 * std::abs(ref));
    REQUIRE(std::abs(h(m, n) - 1.0 / z) < 1e-13 * std::abs(h(m, n)));
  });
  const double ref = -std::pow(std::sinh(M_PI / 20) / std::sin(M_PI / 20), 2);
  const GridWindow q = kWin.quads();
  for (int m = q.m_min; m <= q.m_max; ++m) {
    for (int n = q.n_min; n <= q.n_max; ++n) {
      const Complex cr = oracle::complex_cross_ratio(g(m, n), g(m + 1, n), g(m + 1, n + 1), g(m, n + 1));
      REQUIRE(std::abs(cr - ref) < 1e-10);
      // the pair identity through the edge products of g and h
      const Complex pair = (h(m + 1, n) - h(m, n)) * (g(m + 1, n) - g(m, n)) /
                           ((h(m, n + 1) - h(m, n)) * (g(m, n + 1) - g(m, n)));
      REQUIRE(std::abs(cr - pair) < 1e-9);
    }
  }
  const CrossRatioFactorization f = holomorphic_factorization(g, h);
  CHECK(f.a_at(0) == doctest::Approx(-4 * std::pow(std::sinh(M_PI / 20), 2)).epsilon(1e-12));
  CHECK(f.b_at(0) == doctest::Approx(4 * std::pow(std::sin(M_PI / 20), 2)).epsilon(1e-12));
}

TEST_CASE("Weierstrass representation of the catenoid") {
  const auto [g, h] = catenoid_pair(20, kWin);
  const MinimalNet mn = weierstrass_minimal(g, h);
  CHECK(mn.closure_residual < 1e-10);
  CHECK(mn.purity_residual < 1e-10);
  for (const auto& x : mn.gauss.values.data()) {
    REQUIRE(std::abs(x.norm() - 1.0) < 1e-10);
    REQUIRE(std::abs(x.w) < 1e-15);
  }
  CHECK(dual_relations_residual(mn.gauss, mn.surface_net()).max < 1e-9);
  // surface of revolution: edge lengths depend on m only
  const GridWindow e = kWin.edges2();
  for (int m = e.m_min; m <= e.m_max; ++m) {
    const double l0 = (mn.surface(m, 1) - mn.surface(m, 0)).norm();
    for (int n = e.n_min; n <= e.n_max; ++n)
      REQUIRE((mn.surface(m, n + 1) - mn.surface(m, n)).norm() == doctest::Approx(l0).epsilon(1e-9));
  }
}

TEST_CASE("non dual holomorphic nets are rejected") {
  const auto [g, h] = catenoid_pair(20, GridWindow::symmetric(3, 3));
  HolomorphicNet bad = h;
  bad.values(1, 1) += Complex(0.1, 0.0);
  CHECK_THROWS_AS(weierstrass_minimal(g, bad), Error);
}

TEST_CASE("minimal cousin agrees with the Weierstrass net up to scale and translation") {
  const auto [g, h] = catenoid_pair(20, kWin);
  const MinimalNet a = minimal_cousin(g);
  const MinimalNet b = weierstrass_minimal(g, h);
  CHECK(a.purity_residual < 1e-10);
  // least squares scale of the edges, then the edges must agree
  double num = 0.0, den = 0.0;
  const GridWindow e = kWin.edges1();
  auto edge = [](const Grid<ImaginaryQuaternion>& s, int m, int n) { return s(m + 1, n) - s(m, n); };
  for (int m = e.m_min; m <= e.m_max; ++m)
    for (int n = e.n_min; n <= e.n_max; ++n) {
      const auto x = edge(a.surface, m, n), y = edge(b.surface, m, n);
      num += x.x * y.x + x.y * y.y + x.z * y.z;
      den += x.x * x.x + x.y * x.y + x.z * x.z;
    }
  const double c = num / den;
  double worst = 0.0, size = 0.0;
  for (int m = e.m_min; m <= e.m_max; ++m)
    for (int n = e.n_min; n <= e.n_max; ++n) {
      worst = std::max(worst, (c * edge(a.surface, m, n) - edge(b.surface, m, n)).norm());
      size = std::max(size, edge(b.surface, m, n).norm());
    }
  CHECK(worst < 1e-9 * size);
  CHECK(similarity_distance(a.surface, b.surface) < 1e-9);
}

TEST_CASE("holomorphic frame") {
  const auto [g, h] = catenoid_pair(20, kWin);
  const ComplexFrame id = integrate_H(g, h, 0.0);
  for (const auto& t : id.values.data()) REQUIRE(t.c11 == 1.0);
  CHECK(id.residual == 0.0);
  const ComplexFrame t = integrate_H(g, h, -0.8);
  CHECK(t.residual < 1e-9);
  for (const auto& x : t.values.data()) REQUIRE(std::abs(x.det()) > 0.0);
  // step determinant 1 + l dh (g - g+)
  for (int k = 0; k < 100; ++k) {
    const Complex a(oracle::uniform(), oracle::uniform()), b(oracle::uniform(), oracle::uniform()),
        c(oracle::uniform(), oracle::uniform());
    const double l = oracle::uniform();
    const ComplexMatrix2 s = h_step(a, b, c, l);
    REQUIRE(std::abs(s.det() - (1.0 + l * b * (a - c))) < 1e-14);
  }
}

TEST_CASE("quaternionic frame is a homomorphism") {
  auto rnd = [] {
    return ComplexMatrix2{Complex(oracle::uniform(), oracle::uniform()), Complex(oracle::uniform(), oracle::uniform()),
                          Complex(oracle::uniform(), oracle::uniform()), Complex(oracle::uniform(), oracle::uniform())};
  };
  for (int k = 0; k < 100; ++k) {
    const ComplexMatrix2 a = rnd(), b = rnd();
    REQUIRE((quaternionic(a * b) - quaternionic(a) * quaternionic(b)).max_abs() < 1e-14);
  }
  const ComplexMatrix2 a = rnd();
  const QuatMatrix2 q = quaternionic(a);
  const Quaternion j = Quaternion::j();
  CHECK(qdist(q.a11, to_quaternion(a.c11)) < 1e-16);
  CHECK(qdist(q.a12, to_quaternion(a.c12) * j) < 1e-16);
  CHECK(qdist(q.a21, -(j * to_quaternion(a.c21))) < 1e-16);
  CHECK(qdist(q.a22, -(j * to_quaternion(a.c22) * j)) < 1e-16);
}

TEST_CASE("horospherical net from its hyperbolic Gauss map") {
  const auto [g, h] = catenoid_pair(20, kWin);
  const HorosphericalNet f = horospherical_from_gauss(g, h, 0.25, {1.0, 0.0, 0.0});
  CHECK(horospherical_darboux_residual(f).max < 1e-8);
  CHECK(s3_residual(f.surface).max < 1e-9);
  for (const auto& p : f.surface.values.data()) REQUIRE(boundary_distance(p) > kBoundaryTol);
  g.values.for_each([&](int m, int n, const Complex& z) {
    REQUIRE(qdist(f.gauss_hyperbolic(m, n), complex_to_Cj(z)) < 1e-14 * std::max(1.0, std::abs(z)));
  });
  CHECK(f.surface(0, 0).rep().max_abs() == doctest::Approx(1.0));
  CHECK(qdist(stereo_project(AffineChart::standard(), f.surface(0, 0)), Quaternion::i()) < 1e-14);
  try {
    (void)horospherical_from_gauss(g, h, 0.25, {0.0, 0.5, -1.0});
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadBasePoint);
  }
}

TEST_CASE("Bryant representation") {
  const auto [g, h] = catenoid_pair(20, kWin);
  for (double l : kSweep) {
    const HorosphericalNet f = bryant_cousin(g, h, l);
    INFO(l);
    CHECK(horospherical_darboux_residual(f).max < 1e-8);
    CHECK(s3_residual(f.surface).max < 1e-9);
    for (const auto& x : f.gauss_hyperbolic.values.data()) REQUIRE(std::hypot(x.w, x.x) < 1e-9 * std::max(1.0, x.norm()));
  }
}

TEST_CASE("dual horospherical nets") {
  const auto [g, h] = catenoid_pair(20, kWin);
  const HorosphericalNet sharp = horospherical_from_gauss(g, h, 0.25, {1.0, 0.0, 0.0});
  const HorosphericalNet f = bryant_cousin(g, h, 0.25);
  const DualCheckReport r = dual_check(sharp, f);
  CHECK(r.gauss_identity.max < 1e-8);
  CHECK(r.sharp_darboux.max < 1e-8);
  CHECK(r.bryant_darboux.max < 1e-8);
  // the opposite sign
  const DualCheckReport s = dual_check(horospherical_from_gauss(g, h, -0.25, {1.0, 0.0, 0.0}), bryant_cousin(g, h, -0.25));
  CHECK(s.gauss_identity.max < 1e-8);
  CHECK(s.sharp_darboux.max < 1e-8);
  // near the minimal limit both degenerate together: the Gauss maps tend to g j and the surfaces to i
  const HorosphericalNet tiny = bryant_cousin(g, h, 1e-7);
  const DualCheckReport t = dual_check(horospherical_from_gauss(g, h, 1e-7, {1.0, 0.0, 0.0}), tiny);
  CHECK(t.gauss_identity.max < 1e-8);
  for (const auto& p : tiny.surface.values.data()) REQUIRE(projective_distance(p, HPoint::from_affine(Quaternion::i())) < 1e-4);
}

TEST_CASE("T-transforms of horospherical nets") {
  const auto [g, h] = catenoid_pair(20, kWin);
  const HorosphericalNet f = horospherical_from_gauss(g, h, 0.25, {1.0, 0.0, 0.0});
  for (double mu : {-0.1, 0.1, 0.2}) {
    const HorosphericalNet t = horospherical_t_transform(f, mu);
    INFO(mu);
    CHECK(t.lambda == doctest::Approx(0.25 + mu));
    CHECK(horospherical_darboux_residual(t).max < 1e-8);
    CHECK(s3_residual(t.surface).max < 1e-9);
  }
}

TEST_CASE("cousin coordinate models") {
  Grid<ComplexMatrix2> id(GridWindow::symmetric(1, 1), ComplexMatrix2::identity());
  const Grid<ImaginaryQuaternion> c = ccousin_coords(ComplexFrame{0.0, id, 0.0});
  for (const auto& p : c.data()) {
    REQUIRE(p.x == 1.0);
    REQUIRE(p.y == 0.0);
    REQUIRE(p.z == 0.0);
  }
  const Grid<ImaginaryQuaternion> b = poincare_ball(c);
  for (const auto& p : b.data()) REQUIRE((p - ImaginaryQuaternion{0.5, 0.0, 0.0}).norm() < 1e-16);

  // points approaching C j land near the boundary sphere of the model ball
  Grid<ImaginaryQuaternion> near(GridWindow::symmetric(1, 1));
  for (auto& p : near.data()) p = {1e-9, oracle::uniform(-3, 3), oracle::uniform(-3, 3)};
  const Grid<ImaginaryQuaternion> near_ball = poincare_ball(near);
  for (const auto& p : near_ball.data()) REQUIRE(std::abs((p - ImaginaryQuaternion{0.5, 0, 0}).norm() - 0.5) < 1e-8);

  Grid<ComplexMatrix2> singular(GridWindow::symmetric(1, 1), ComplexMatrix2{1.0, 0.0, 0.0, 0.0});
  CHECK_THROWS_AS(ccousin_coords(ComplexFrame{0.0, singular, 0.0}), Error);
}

TEST_CASE("hyperbolic model coordinates are the affine Bryant net") {
  const auto [g, h] = catenoid_pair(20, kWin);
  for (double l : kSweep) {
    const ComplexFrame tau = integrate_H(g, h, l);
    const Grid<ImaginaryQuaternion> c = ccousin_coords(tau);
    const AffineNet f = project(bryant_cousin(g, h, l).surface, AffineChart::standard());
    c.for_each([&](int m, int n, const ImaginaryQuaternion& p) {
      REQUIRE(qdist(p.to_quaternion(), f(m, n)) < 1e-9 * std::max(1.0, f(m, n).norm()));
      REQUIRE(p.x > 0.0);
    });
    const Grid<ImaginaryQuaternion> ball = poincare_ball(c);
    for (const auto& p : ball.data()) {
      REQUIRE(p.norm() < 1.0);
      REQUIRE((p - ImaginaryQuaternion{0.5, 0, 0}).norm() <= 0.5);
    }
  }
}

TEST_CASE("cousins approach the catenoid as the parameter tends to zero") {
  const auto [g, h] = catenoid_pair(20, kWin);
  const MinimalNet cat = weierstrass_minimal(g, h);
  double last = INFINITY;
  for (double l : {1e-3, 1e-5, 1e-7}) {
    const double d = similarity_distance(ccousin_coords(integrate_H(g, h, l)), cat.surface);
    INFO(l);
    CHECK(d < last);
    CHECK(d < 100 * l);
    last = d;
  }
}

TEST_CASE("equivalence of the minimal and Bryant T-transforms") {
  const auto [g, h] = catenoid_pair(20, kWin);
  const MinimalNet mn = weierstrass_minimal(g, h);
  const ChristoffelPair p = make_christoffel_pair(mn.surface_net(), mn.gauss);
  const Connection c = build_connection(p);
  for (double l : {-0.117, 0.25}) {
    const ProjectiveNet tf = t_transform(c.base, integrate_T(c, l));
    CHECK(mobius_equivalence_residual(tf, bryant_cousin(g, h, l).surface).max < 1e-7);
  }
}

TEST_CASE("horospherical suite") {
  const auto [g, h] = catenoid_pair(20, kWin);
  for (double l : kSweep) {
    HorosphericalOptions o;
    o.lambda = l;
    const InvariantReport r = horospherical_suite(g, h, o);
    INFO(r.text());
    CHECK(r.passed());
  }
}
