#include <doctest.h>

#include "nlslab/error.hpp"
#include "nlslab/numeric.hpp"

#include <random>

using namespace nlslab;

TEST_CASE("isqrt and perfect squares") {
  CHECK(isqrt(BigInt(0)) == 0);
  CHECK(isqrt(BigInt(15)) == 3);
  CHECK(isqrt(BigInt(16)) == 4);
  CHECK(is_perfect_square(BigInt(144)));
  CHECK_FALSE(is_perfect_square(BigInt(2)));
  CHECK_THROWS_AS(isqrt(BigInt(-1)), Error);
}

TEST_CASE("floor division rounds toward minus infinity") {
  CHECK(floor_div(7, 2) == 3);
  CHECK(floor_div(-7, 2) == -4);
  CHECK(floor_div(7, -2) == -4);
  CHECK(floor_div(-8, 2) == -4);
}

TEST_CASE("quadratic number signs agree with 50-digit evaluation") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> small(-40, 40);
  for (int i = 0; i < 2000; ++i) {
    Rational r(small(rng), 1 + std::abs(small(rng)));
    Rational s(small(rng), 1 + std::abs(small(rng)));
    QuadNum x(r, s, 2);
    Real v = to_real(r) + to_real(s) * boost::multiprecision::sqrt(Real(2));
    int expect = v > 0 ? 1 : (v < 0 ? -1 : 0);
    CHECK(x.sign() == expect);
  }
}

TEST_CASE("quadratic field arithmetic") {
  QuadNum s2(0, 1, 2);
  CHECK(s2 * s2 == QuadNum(2));
  QuadNum x = QuadNum(1) + s2;
  CHECK(x * x.inverse() == QuadNum(1));
  CHECK(x.norm() == -1);
  CHECK(x.floor() == 2);
  CHECK((-x).floor() == -3);
  CHECK_THROWS_AS(QuadNum(0, 1, 2) + QuadNum(0, 1, 3), Error);
  // perfect-square radicand collapses
  CHECK(QuadNum(0, 1, 9).is_rational());
}

TEST_CASE("enclosures bracket the value") {
  QuadNum x(Rational(1, 3), Rational(-5, 7), 3);
  auto iv = enclose(x, 30);
  CHECK((QuadNum(iv.lo) - x).sign() <= 0);
  CHECK((QuadNum(iv.hi) - x).sign() >= 0);
  CHECK(iv.width() < Rational(BigInt(1), boost::multiprecision::pow(BigInt(10), 30)));
}

TEST_CASE("scalar sign certification") {
  Scalar a(RationalInterval{Rational(1), Rational(2)});
  Scalar b(RationalInterval{Rational(-1), Rational(2)});
  CHECK(a.sign() == 1);
  CHECK_FALSE(b.sign().has_value());
  Scalar e(QuadNum(0, 1, 2));
  CHECK((e * e - Scalar(QuadNum(2))).sign() == 0);
  CHECK((a * b).interval().lo == -2);
}
