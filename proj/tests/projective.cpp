#include <doctest.h>

#include <vector>

#include "isonet/error.hpp"
#include "isonet/projective.hpp"
#include "oracles.hpp"

using namespace isonet;

namespace {

QuatMatrix2 random_matrix() {
  return {oracle::random_quaternion(), oracle::random_quaternion(), oracle::random_quaternion(),
          oracle::random_quaternion()};
}

HPoint random_point() { return HPoint(HVector{oracle::random_quaternion(), oracle::random_quaternion()}); }

double qdist(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

}  // namespace

TEST_CASE("module laws") {
  for (int t = 0; t < 200; ++t) {
    const HVector v{oracle::random_quaternion(), oracle::random_quaternion()};
    const Quaternion l = oracle::random_quaternion(), m = oracle::random_quaternion();
    const HVector a = (v * l) * m, b = v * (l * m);
    REQUIRE((a - b).max_abs() < 1e-14);
    const HCovector nu{oracle::random_quaternion(), oracle::random_quaternion()};
    REQUIRE(qdist((l * nu)(v), l * nu(v)) < 1e-14);
  }
}

TEST_CASE("matrix inverse") {
  for (int t = 0; t < 200; ++t) {
    const QuatMatrix2 m = random_matrix();
    const QuatMatrix2 p = m * inverse(m);
    REQUIRE((p - QuatMatrix2::identity()).max_abs() < 1e-11 * std::max(1.0, m.max_abs() * inverse(m).max_abs()));
    REQUIRE(study_determinant(m) > 0.0);
  }
  const QuatMatrix2 singular{1.0, Quaternion::i(), Quaternion::j(), Quaternion::j() * Quaternion::i()};
  CHECK(study_determinant(singular) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(inverse(singular), Error);
}

TEST_CASE("points are stored with a normalized representative") {
  const HPoint p(HVector{Quaternion(0, 3, 0, 4), Quaternion(2.0)});
  CHECK(p.rep().max_abs() == doctest::Approx(1.0));
  CHECK_THROWS_AS(HPoint(HVector{0.0, 0.0}), Error);
  // representative independence
  const Quaternion l = oracle::random_quaternion();
  CHECK(projective_distance(p, HPoint(p.rep() * l)) < 1e-15);
  CHECK(projective_distance(HPoint::infinity(), HPoint::from_affine(1e9)) < 1e-8);
}

TEST_CASE("annihilator") {
  const HCovector a = annihilator(HPoint(HVector{1.0, 0.0}));
  CHECK(a.left.norm() < 1e-15);
  CHECK(a.right.norm() > 0.0);
  // (p, 1) is killed by (1, -p) up to a left factor
  const Quaternion p(0.3, -0.2, 0.5, 0.1);
  const HCovector b = annihilator(HPoint::from_affine(p));
  const Quaternion s = b.left;
  CHECK(qdist(b.right, -(s * p)) < 1e-14);
  for (int t = 0; t < 500; ++t) {
    const HPoint x = random_point();
    REQUIRE(annihilator(x)(x.rep()).norm() < 1e-12);
  }
}

TEST_CASE("standard chart") {
  const AffineChart c = AffineChart::standard();
  CHECK(c.pseudo_duality_residual() < 1e-15);
  const Quaternion q(1, 2, -3, 0.5);
  CHECK(qdist(stereo_project(c, HPoint::from_affine(q)), q) < 1e-14);
  for (int t = 0; t < 200; ++t) {
    const Quaternion p = oracle::random_quaternion(2.0), l = oracle::random_quaternion();
    REQUIRE(qdist(stereo_project(c, HPoint(HVector{p * l, l})), p) < 1e-12 * std::max(1.0, p.norm()));
  }
  CHECK_THROWS_AS(stereo_project(c, HPoint::infinity()), Error);
}

TEST_CASE("rescaled chart is a stretch rotation") {
  const AffineChart s = AffineChart::standard();
  const Quaternion a0(0.4, 1.0, -0.3, 0.2), ainf(1.5, -0.5, 0.7, 0.1);
  const AffineChart c = AffineChart::from_basis(s.v0 * a0, s.vinf * inverse(ainf));
  CHECK(c.pseudo_duality_residual() < 1e-14);
  for (int t = 0; t < 100; ++t) {
    const Quaternion p = oracle::random_quaternion(2.0);
    REQUIRE(qdist(stereo_project(c, HPoint::from_affine(p)), ainf * p * a0) < 1e-12);
  }
}

TEST_CASE("random charts are pseudo dual and invert their lift") {
  for (int t = 0; t < 100; ++t) {
    const AffineChart c = AffineChart::with_infinity_at(random_point());
    REQUIRE(c.pseudo_duality_residual() < 1e-12);
    const Quaternion p = oracle::random_quaternion();
    REQUIRE(qdist(stereo_project(c, lift(c, p)), p) < 1e-10);
  }
}

TEST_CASE("affine differences through covectors") {
  // (nu1 vinf)^{-1} (nu1 v2) (nuinf v2)^{-1} = p2 - p1 in the standard chart
  const AffineChart c = AffineChart::standard();
  for (int t = 0; t < 200; ++t) {
    const Quaternion p1 = oracle::random_quaternion(), p2 = oracle::random_quaternion();
    const Quaternion l = oracle::random_quaternion();
    const HVector v2 = lift_vector(c, p2) * l;
    const HCovector nu1 = oracle::random_quaternion() * (c.nu0 - p1 * c.nuinf);
    const Quaternion x = inverse(nu1(c.vinf)) * nu1(v2) * inverse(c.nuinf(v2));
    REQUIRE(qdist(x, p2 - p1) < 1e-11 * std::max(1.0, (p2 - p1).norm()));
  }
}

TEST_CASE("cross ratio examples") {
  const auto a = [](double w, double x) { return HPoint::from_affine(Quaternion(w, x, 0, 0)); };
  const NormalizedCrossRatio sq = cross_ratio(a(0, 0), a(1, 0), a(1, 1), a(0, 1));
  CHECK(sq.re == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(sq.im < 1e-14);
  const NormalizedCrossRatio line = cross_ratio(a(0, 0), a(1, 0), a(2, 0), a(3, 0));
  CHECK(line.re == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
  // one quad of exp(2 pi (m + i n)/20), against direct complex evaluation
  const auto g = [](int m, int n) { return std::exp(oracle::C(2 * M_PI * m / 20, 2 * M_PI * n / 20)); };
  const auto h = [&](int m, int n) { return HPoint::from_affine(Quaternion(g(m, n).real(), g(m, n).imag(), 0, 0)); };
  const NormalizedCrossRatio e = cross_ratio(h(0, 0), h(1, 0), h(1, 1), h(0, 1));
  const oracle::C ref = oracle::complex_cross_ratio(g(0, 0), g(1, 0), g(1, 1), g(0, 1));
  CHECK(e.re == doctest::Approx(ref.real()).epsilon(1e-13));
  CHECK(e.re == doctest::Approx(-std::pow(std::sinh(M_PI / 20) / std::sin(M_PI / 20), 2)).epsilon(1e-13));
  CHECK(e.re == doctest::Approx(-1.01662).epsilon(1e-4));
  CHECK(std::abs(ref.imag()) < 1e-13);
  CHECK_THROWS_AS(cross_ratio(a(0, 0), a(1, 0), a(1, 0), a(2, 0)), Error);
}

TEST_CASE("cross ratio matches the matrix model and its invariances") {
  for (int t = 0; t < 500; ++t) {
    const Quaternion p[4] = {oracle::random_quaternion(), oracle::random_quaternion(), oracle::random_quaternion(),
                             oracle::random_quaternion()};
    HPoint h[4];
    for (int k = 0; k < 4; ++k) h[k] = HPoint::from_affine(p[k]);
    const NormalizedCrossRatio c = cross_ratio(h[0], h[1], h[2], h[3]);
    const auto ref = oracle::cross_ratio(p[0], p[1], p[2], p[3]);
    const double scale = std::max(1.0, std::hypot(ref[0], ref[1]));
    if (scale > 1e4) continue;  // nearly coincident sample
    REQUIRE(std::abs(c.re - ref[0]) < 1e-10 * scale);
    REQUIRE(std::abs(c.im - ref[1]) < 1e-10 * scale);
    REQUIRE(c.im >= 0.0);
    // swap p1 <-> p3, p2 <-> p4
    const NormalizedCrossRatio s = cross_ratio(h[2], h[3], h[0], h[1]);
    REQUIRE(std::abs(s.re - c.re) < 1e-10 * scale);
    REQUIRE(std::abs(s.im - c.im) < 1e-10 * scale);
    // Moebius invariance
    const QuatMatrix2 m = random_matrix();
    const NormalizedCrossRatio mc =
        cross_ratio(mobius_apply(m, h[0]), mobius_apply(m, h[1]), mobius_apply(m, h[2]), mobius_apply(m, h[3]));
    REQUIRE(std::abs(mc.re - c.re) < 1e-10 * scale * scale);
    REQUIRE(std::abs(mc.im - c.im) < 1e-10 * scale * scale);
  }
}

TEST_CASE("real cross ratios agree in every chart") {
  // concircular points in C
  const Quaternion p[4] = {1.0, Quaternion(0, 1, 0, 0), -1.0, Quaternion(0.6, -0.8, 0, 0)};
  const double ref = normalize_cross_ratio(affine_cross_ratio(p[0], p[1], p[2], p[3])).re;
  for (int t = 0; t < 50; ++t) {
    const AffineChart c = AffineChart::with_infinity_at(random_point());
    Quaternion x[4];
    for (int k = 0; k < 4; ++k) x[k] = stereo_project(c, HPoint::from_affine(p[k]));
    const NormalizedCrossRatio n = normalize_cross_ratio(affine_cross_ratio(x[0], x[1], x[2], x[3]));
    REQUIRE(n.re == doctest::Approx(ref).epsilon(1e-9));
    REQUIRE(n.im < 1e-9);
  }
}

TEST_CASE("fourth point") {
  for (int t = 0; t < 100; ++t) {
    const HPoint a = random_point(), b = random_point(), d = random_point();
    const double q = oracle::uniform(-3.0, -0.2);
    const HPoint x = solve_fourth_point(a, b, d, q);
    const NormalizedCrossRatio c = cross_ratio(a, b, x, d);
    REQUIRE(c.re == doctest::Approx(q).epsilon(1e-9));
    REQUIRE(c.im < 1e-9);
    // the four points are concircular
    const HPoint pts[] = {a, b, x, d};
    REQUIRE(sphere_rank_residual(pts, 3) < 1e-9);
  }
}

TEST_CASE("Moebius action") {
  const HPoint p = random_point();
  CHECK(projective_distance(mobius_apply(QuatMatrix2::identity(), p), p) < 1e-15);
  for (int t = 0; t < 200; ++t) {
    const QuatMatrix2 m = random_matrix();
    const HPoint x = random_point();
    REQUIRE(projective_distance(mobius_apply(inverse(m), mobius_apply(m, x)), x) < 1e-11);
  }
  CHECK_THROWS_AS(mobius_apply(QuatMatrix2::zero(), p), Error);
}

TEST_CASE("Moebius fit recovers a random map") {
  const QuatMatrix2 m = random_matrix();
  std::vector<HPoint> from, to;
  for (int k = 0; k < 8; ++k) {
    from.push_back(random_point());
    to.push_back(mobius_apply(m, from.back()));
  }
  const MobiusFit fit = fit_mobius(from, to);
  CHECK(fit.residual < 1e-10);
  CHECK(projective_matrix_distance(fit.map, m) < 1e-8);
  const HPoint y = random_point();
  CHECK(projective_distance(mobius_apply(fit.map, y), mobius_apply(m, y)) < 1e-9);
  CHECK_THROWS_AS(fit_mobius(std::span(from).first(4), std::span(to).first(4)), Error);
}

TEST_CASE("hermitian forms") {
  const HermitianForm s = HermitianForm::imaginary_sphere();
  const Quaternion p(0.7, 0.1, -0.4, 2.0);
  const HVector v{p, 1.0};
  CHECK(qdist(hermitian_eval(s, v, v), 2.0 * p.w) < 1e-15);
  CHECK(form_value(s, HPoint::from_affine(p.imag())) < 1e-15);
  CHECK(form_value(s, HPoint::from_affine(p)) > 0.1);
  CHECK(form_value(s, HPoint::infinity()) < 1e-15);
  for (int t = 0; t < 200; ++t) {
    const HermitianForm f{oracle::uniform(), oracle::uniform(), oracle::random_quaternion()};
    const HVector a{oracle::random_quaternion(), oracle::random_quaternion()};
    const HVector b{oracle::random_quaternion(), oracle::random_quaternion()};
    REQUIRE(qdist(hermitian_eval(f, a, b), hermitian_eval(f, b, a).conj()) < 1e-12);
    REQUIRE(std::abs(hermitian_eval(f, a, a).imag_norm()) < 1e-12);
  }
}

TEST_CASE("sphere transform") {
  const HermitianForm s = HermitianForm::imaginary_sphere();
  const HermitianForm same = sphere_transform(QuatMatrix2::identity(), s);
  CHECK(std::abs(same.s11 - s.s11) + std::abs(same.s22 - s.s22) + qdist(same.s12, s.s12) < 1e-15);
  const HermitianForm scaled = sphere_transform(2.0 * QuatMatrix2::identity(), s);
  for (int t = 0; t < 50; ++t) REQUIRE(form_value(scaled, HPoint::from_affine(oracle::random_quaternion().imag())) < 1e-14);
  for (int t = 0; t < 50; ++t) {
    const QuatMatrix2 m = random_matrix();
    const HermitianForm image = sphere_transform(m, s);
    for (int k = 0; k < 10; ++k) {
      const HPoint x = HPoint::from_affine(oracle::random_quaternion().imag());
      REQUIRE(form_value(image, mobius_apply(m, x)) < 1e-10);
    }
  }
}

TEST_CASE("sphere rank test") {
  std::vector<HPoint> on, off;
  for (int k = 0; k < 8; ++k) {
    Quaternion p = oracle::random_quaternion().imag();
    p.z = 0.0;  // unit circle in span{i, j}
    on.push_back(HPoint::from_affine(p / p.norm()));
    off.push_back(HPoint::from_affine(oracle::random_quaternion()));
  }
  CHECK(sphere_rank_residual(on, 3) < 1e-12);
  CHECK(sphere_rank_residual(off, 4) > 1e-3);
  std::vector<HPoint> sphere;
  for (int k = 0; k < 8; ++k) {
    const Quaternion p = oracle::random_quaternion().imag();
    sphere.push_back(HPoint::from_affine(p / p.norm()));
  }
  CHECK(sphere_rank_residual(sphere, 4) < 1e-12);
  CHECK(sphere_rank_residual(sphere, 3) > 1e-3);
}
