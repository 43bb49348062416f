#pragma once

// Exact and certified scalar types.
//
// QuadNum is an element r + s*sqrt(d) of a real quadratic field with
// rational r, s. Every sign decision on it is exact. RationalInterval is a
// closed interval with rational endpoints, used when the torus ratio is only
// known to finitely many digits. Scalar wraps either one.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <variant>

namespace nlslab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Real = boost::multiprecision::cpp_bin_float_50;

BigInt isqrt(const BigInt& n);
bool is_perfect_square(const BigInt& n);
BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt floor_of(const Rational& x);
Rational make_rational(const BigInt& num, const BigInt& den);
Real to_real(const BigInt& x);
Real to_real(const Rational& x);
double to_double(const Rational& x);
std::string to_string(const Rational& x);
/// Optional sign and decimal digits; config error otherwise.
BigInt parse_bigint(const std::string& s, const std::string& what = "integer");
/// "p/q", "12", "-0.375".
Rational parse_rational(const std::string& s);

/// r + s*sqrt(d). A value with s == 0 is rational and combines with any field.
class QuadNum {
 public:
  QuadNum() = default;
  QuadNum(long long r) : r_(r) {}  // NOLINT(google-explicit-constructor)
  QuadNum(const BigInt& r) : r_(r) {}  // NOLINT(google-explicit-constructor)
  QuadNum(const Rational& r) : r_(r) {}  // NOLINT(google-explicit-constructor)
  QuadNum(Rational r, Rational s, BigInt d);

  const Rational& rational_part() const { return r_; }
  const Rational& surd_coeff() const { return s_; }
  const BigInt& radicand() const { return d_; }
  bool is_rational() const { return s_ == 0; }
  bool is_zero() const { return r_ == 0 && s_ == 0; }

  int sign() const;
  QuadNum abs() const { return sign() < 0 ? -*this : *this; }
  QuadNum conjugate() const { return QuadNum(r_, -s_, d_); }
  /// Field norm r^2 - s^2 d (rational).
  Rational norm() const { return r_ * r_ - s_ * s_ * Rational(d_); }
  QuadNum inverse() const;
  BigInt floor() const;

  Real to_real() const;
  double to_double() const;
  std::string to_string() const;

  QuadNum operator-() const { return QuadNum(-r_, -s_, d_); }
  friend QuadNum operator+(const QuadNum& a, const QuadNum& b);
  friend QuadNum operator-(const QuadNum& a, const QuadNum& b);
  friend QuadNum operator*(const QuadNum& a, const QuadNum& b);
  friend QuadNum operator/(const QuadNum& a, const QuadNum& b);
  QuadNum& operator+=(const QuadNum& o) { return *this = *this + o; }
  QuadNum& operator-=(const QuadNum& o) { return *this = *this - o; }
  QuadNum& operator*=(const QuadNum& o) { return *this = *this * o; }
  friend bool operator==(const QuadNum& a, const QuadNum& b) {
    return (a - b).is_zero();
  }
  friend bool operator<(const QuadNum& a, const QuadNum& b) {
    return (a - b).sign() < 0;
  }
  friend bool operator<=(const QuadNum& a, const QuadNum& b) {
    return (a - b).sign() <= 0;
  }

 private:
  static BigInt common_radicand(const QuadNum& a, const QuadNum& b);

  Rational r_{0};
  Rational s_{0};
  BigInt d_{0};
};

struct RationalInterval {
  Rational lo{0};
  Rational hi{0};

  static RationalInterval point(const Rational& x) { return {x, x}; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  bool is_point() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  RationalInterval abs() const;
  Real midpoint_real() const { return (to_real(lo) + to_real(hi)) / 2; }

  friend RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
  }
  friend RationalInterval operator-(const RationalInterval& a, const RationalInterval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
  }
  friend RationalInterval operator*(const RationalInterval& a, const RationalInterval& b);
  RationalInterval operator-() const { return {-hi, -lo}; }
};

/// Rational enclosure of a quadratic number; width <= 10^-digits.
RationalInterval enclose(const QuadNum& x, unsigned digits);

/// Either an exact quadratic number or a certified interval.
class Scalar {
 public:
  Scalar() = default;
  Scalar(QuadNum x) : v_(std::move(x)) {}  // NOLINT(google-explicit-constructor)
  Scalar(RationalInterval x) : v_(std::move(x)) {}  // NOLINT(google-explicit-constructor)

  bool is_exact() const { return std::holds_alternative<QuadNum>(v_); }
  const QuadNum& exact() const { return std::get<QuadNum>(v_); }
  RationalInterval interval(unsigned digits = 40) const;

  /// Certified sign, or nullopt when an interval straddles zero.
  std::optional<int> sign() const;
  Scalar abs() const;
  double to_double() const;
  std::string to_string() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  Scalar operator-() const;

  /// Certified a < b; nullopt if undecidable at the available precision.
  friend std::optional<bool> certainly_less(const Scalar& a, const Scalar& b);

 private:
  std::variant<QuadNum, RationalInterval> v_;
};

}  // namespace nlslab
