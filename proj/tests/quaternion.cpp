#include <doctest.h>

#include "isonet/error.hpp"
#include "isonet/quaternion.hpp"
#include "oracles.hpp"

using isonet::Quaternion;

namespace {

double dist(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

}  // namespace

TEST_CASE("unit relations") {
  const Quaternion i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();
  CHECK(i * j == k);
  CHECK(j * k == i);
  CHECK(k * i == j);
  CHECK(i * i == Quaternion(-1.0));
  CHECK(j * j == Quaternion(-1.0));
  CHECK(k * k == Quaternion(-1.0));
  CHECK(j * i == -k);
  CHECK((1.0 + i) * (1.0 + j) == Quaternion(1, 1, 1, 1));
}

TEST_CASE("product agrees with the complex matrix model") {
  for (int t = 0; t < 10000; ++t) {
    const Quaternion p = oracle::random_quaternion(3.0), q = oracle::random_quaternion(3.0);
    REQUIRE(dist(p * q, oracle::mul(p, q)) < 1e-12 * p.norm() * q.norm());
  }
}

TEST_CASE("algebraic identities on random samples") {
  for (int t = 0; t < 10000; ++t) {
    const Quaternion p = oracle::random_quaternion(), q = oracle::random_quaternion(), r = oracle::random_quaternion();
    const double s = p.norm() * q.norm() * r.norm();
    REQUIRE(dist((p * q) * r, p * (q * r)) < 1e-12 * s);
    REQUIRE(std::abs((p * q).norm() - p.norm() * q.norm()) < 1e-12 * p.norm() * q.norm());
    REQUIRE(dist((p * q).conj(), q.conj() * p.conj()) < 1e-12 * p.norm() * q.norm());
    REQUIRE(std::abs((p * q).w - (q * p).w) < 1e-12 * p.norm() * q.norm());
    REQUIRE(dist(p * isonet::inverse(p), 1.0) < 1e-12);
    REQUIRE(dist(isonet::inverse(p) * p, 1.0) < 1e-12);
  }
}

TEST_CASE("inverse examples") {
  CHECK(isonet::inverse(Quaternion::i()) == -Quaternion::i());
  CHECK(isonet::inverse(Quaternion(2.0)) == Quaternion(0.5));
  CHECK(dist(isonet::inverse(Quaternion(0, 0, 1, 1)), Quaternion(0, 0, -0.5, -0.5)) < 1e-16);
  CHECK(dist(isonet::right_divide(Quaternion::k(), Quaternion::j()), Quaternion::k() * isonet::inverse(Quaternion::j())) <
        1e-16);
  CHECK(dist(isonet::left_divide(Quaternion::j(), Quaternion::k()), isonet::inverse(Quaternion::j()) * Quaternion::k()) <
        1e-16);
}

TEST_CASE("inverse of zero is rejected") {
  try {
    (void)isonet::inverse(Quaternion(0.0));
    FAIL("no error");
  } catch (const isonet::Error& e) {
    CHECK(e.kind() == isonet::ErrorKind::ZeroDivision);
  }
  CHECK_THROWS_AS((void)isonet::inverse(Quaternion(1e-14)), isonet::Error);
  // the threshold scales with the operand
  CHECK_NOTHROW((void)isonet::inverse(Quaternion(1e-14), 1e-10));
}

TEST_CASE("complex embeddings") {
  using isonet::Complex;
  CHECK(isonet::complex_to_Cj(Complex(1, 0)) == Quaternion::j());
  CHECK(isonet::complex_to_Cj(Complex(0, 1)) == Quaternion::k());
  CHECK(isonet::complex_to_Cj(Complex(3, -2)) == Quaternion(0, 0, 3, -2));
  for (int t = 0; t < 1000; ++t) {
    const Complex a(oracle::uniform(), oracle::uniform()), b(oracle::uniform(), oracle::uniform());
    // ring homomorphism onto span{1, i}
    REQUIRE(dist(isonet::to_quaternion(a * b), isonet::to_quaternion(a) * isonet::to_quaternion(b)) < 1e-15);
    // right multiplication by j
    REQUIRE(isonet::to_quaternion(a) * Quaternion::j() == isonet::complex_to_Cj(a));
    // (a j)(b j) = -a conj(b)
    REQUIRE(dist(isonet::complex_to_Cj(a) * isonet::complex_to_Cj(b), isonet::to_quaternion(-a * std::conj(b))) <
            1e-15);
    REQUIRE(isonet::Cj_to_complex(isonet::complex_to_Cj(a)) == a);
  }
}

TEST_CASE("imaginary quaternions model R^3") {
  const isonet::ImaginaryQuaternion v{1.0, 2.0, 2.0};
  CHECK(v.norm() == doctest::Approx(3.0));
  CHECK(v.to_quaternion().w == 0.0);
  CHECK(v.to_quaternion().norm() == doctest::Approx(3.0));
}
