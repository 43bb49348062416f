#include "nlslab/numeric.hpp"

#include "nlslab/error.hpp"

#include <boost/multiprecision/integer.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace nlslab {

namespace mp = boost::multiprecision;

BigInt isqrt(const BigInt& n) {
  if (n < 0) fail(ErrorKind::domain, "isqrt of negative number");
  return mp::sqrt(n);
}

bool is_perfect_square(const BigInt& n) {
  if (n < 0) return false;
  BigInt s = isqrt(n);
  return s * s == n;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b == 0) fail(ErrorKind::domain, "division by zero");
  BigInt q = a / b;  // truncates toward zero
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

BigInt floor_of(const Rational& x) {
  return floor_div(mp::numerator(x), mp::denominator(x));
}

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) fail(ErrorKind::domain, "zero denominator");
  // cpp_rational rejects a negative denominator
  return den < 0 ? Rational(BigInt(-num), BigInt(-den)) : Rational(num, den);
}

Real to_real(const BigInt& x) { return Real(x); }

Real to_real(const Rational& x) {
  return Real(mp::numerator(x)) / Real(mp::denominator(x));
}

double to_double(const Rational& x) { return static_cast<double>(to_real(x)); }

std::string to_string(const Rational& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// --- QuadNum ---------------------------------------------------------------

QuadNum::QuadNum(Rational r, Rational s, BigInt d)
    : r_(std::move(r)), s_(std::move(s)), d_(std::move(d)) {
  if (s_ != 0) {
    if (d_ <= 0) fail(ErrorKind::domain, "quadratic radicand must be positive");
    if (is_perfect_square(d_)) {
      r_ += s_ * Rational(isqrt(d_));
      s_ = 0;
    }
  }
}

BigInt QuadNum::common_radicand(const QuadNum& a, const QuadNum& b) {
  if (a.s_ == 0) return b.d_;
  if (b.s_ == 0) return a.d_;
  if (a.d_ != b.d_) fail(ErrorKind::domain, "mixed quadratic fields");
  return a.d_;
}

QuadNum operator+(const QuadNum& a, const QuadNum& b) {
  BigInt d = QuadNum::common_radicand(a, b);
  return QuadNum(a.r_ + b.r_, a.s_ + b.s_, d);
}

QuadNum operator-(const QuadNum& a, const QuadNum& b) {
  BigInt d = QuadNum::common_radicand(a, b);
  return QuadNum(a.r_ - b.r_, a.s_ - b.s_, d);
}

QuadNum operator*(const QuadNum& a, const QuadNum& b) {
  BigInt d = QuadNum::common_radicand(a, b);
  return QuadNum(a.r_ * b.r_ + a.s_ * b.s_ * Rational(d),
                 a.r_ * b.s_ + a.s_ * b.r_, d);
}

QuadNum QuadNum::inverse() const {
  if (is_zero()) fail(ErrorKind::domain, "inverse of zero");
  Rational n = norm();
  return QuadNum(r_ / n, -s_ / n, d_);
}

QuadNum operator/(const QuadNum& a, const QuadNum& b) { return a * b.inverse(); }

int QuadNum::sign() const {
  int sr = r_.sign();
  int ss = s_.sign();
  if (ss == 0) return sr;
  if (sr == 0) return ss;
  if (sr == ss) return sr;
  // opposite signs: compare r^2 with s^2 d
  Rational lhs = r_ * r_;
  Rational rhs = s_ * s_ * Rational(d_);
  return lhs > rhs ? sr : ss;
}

BigInt QuadNum::floor() const {
  if (s_ == 0) return floor_of(r_);
  Real approx = to_real();
  BigInt m = BigInt(mp::floor(approx));
  while ((*this - QuadNum(m)).sign() < 0) --m;
  while ((*this - QuadNum(BigInt(m + 1))).sign() >= 0) ++m;
  return m;
}

Real QuadNum::to_real() const {
  Real v = nlslab::to_real(r_);
  if (s_ != 0) v += nlslab::to_real(s_) * mp::sqrt(Real(d_));
  return v;
}

double QuadNum::to_double() const { return static_cast<double>(to_real()); }

std::string QuadNum::to_string() const {
  std::ostringstream os;
  os << r_;
  if (s_ != 0) os << (s_ > 0 ? "+" : "-") << mp::abs(s_) << "*sqrt(" << d_ << ")";
  return os.str();
}

// --- intervals -------------------------------------------------------------

RationalInterval RationalInterval::abs() const {
  if (lo >= 0) return *this;
  if (hi <= 0) return {-hi, -lo};
  return {Rational(0), mp::max(-lo, hi)};
}

RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
  Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  Rational lo = c[0], hi = c[0];
  for (const auto& x : c) {
    if (x < lo) lo = x;
    if (x > hi) hi = x;
  }
  return {lo, hi};
}

RationalInterval enclose(const QuadNum& x, unsigned digits) {
  if (x.is_rational()) return RationalInterval::point(x.rational_part());
  // sqrt(d) in [m/10^k, (m+1)/10^k] with m = isqrt(d * 10^2k)
  const Rational& s = x.surd_coeff();
  BigInt scale = mp::pow(BigInt(10), digits);
  // widen by the size of s so the final width stays below 10^-digits
  BigInt extra = BigInt(mp::abs(mp::numerator(s))) + 1;
  scale *= extra;
  BigInt m = isqrt(x.radicand() * scale * scale);
  Rational lo_root(m, scale);
  Rational hi_root(m + 1, scale);
  Rational a = x.rational_part() + s * lo_root;
  Rational b = x.rational_part() + s * hi_root;
  if (a > b) std::swap(a, b);
  return {a, b};
}

// --- Scalar ----------------------------------------------------------------

RationalInterval Scalar::interval(unsigned digits) const {
  if (is_exact()) return enclose(exact(), digits);
  return std::get<RationalInterval>(v_);
}

std::optional<int> Scalar::sign() const {
  if (is_exact()) return exact().sign();
  const auto& iv = std::get<RationalInterval>(v_);
  if (iv.lo > 0) return 1;
  if (iv.hi < 0) return -1;
  if (iv.lo == 0 && iv.hi == 0) return 0;
  return std::nullopt;
}

Scalar Scalar::abs() const {
  if (is_exact()) return Scalar(exact().abs());
  return Scalar(std::get<RationalInterval>(v_).abs());
}

double Scalar::to_double() const {
  if (is_exact()) return exact().to_double();
  return static_cast<double>(std::get<RationalInterval>(v_).midpoint_real());
}

std::string Scalar::to_string() const {
  if (is_exact()) return exact().to_string();
  const auto& iv = std::get<RationalInterval>(v_);
  std::ostringstream os;
  os << "[" << static_cast<double>(to_real(iv.lo)) << ", "
     << static_cast<double>(to_real(iv.hi)) << "]";
  return os.str();
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return Scalar(a.exact() + b.exact());
  return Scalar(a.interval() + b.interval());
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return Scalar(a.exact() - b.exact());
  return Scalar(a.interval() - b.interval());
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return Scalar(a.exact() * b.exact());
  return Scalar(a.interval() * b.interval());
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(-exact());
  return Scalar(-std::get<RationalInterval>(v_));
}

std::optional<bool> certainly_less(const Scalar& a, const Scalar& b) {
  auto s = (a - b).sign();
  if (!s) return std::nullopt;
  return *s < 0;
}

BigInt parse_bigint(const std::string& s, const std::string& what) {
  std::string t = s;
  t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char ch) { return std::isspace(ch); }),
          t.end());
  bool ok = !t.empty();
  for (std::size_t i = 0; i < t.size() && ok; ++i) {
    if (i == 0 && (t[i] == '-' || t[i] == '+')) {
      ok = t.size() > 1;
      continue;
    }
    ok = std::isdigit(static_cast<unsigned char>(t[i])) != 0;
  }
  if (!ok) fail(ErrorKind::config, "malformed integer in " + what + ": '" + s + "'");
  bool neg = t[0] == '-';
  if (t[0] == '+' || t[0] == '-') t.erase(0, 1);
  // cpp_int reads a leading 0 as an octal prefix
  auto nz = t.find_first_not_of('0');
  t = nz == std::string::npos ? "0" : t.substr(nz);
  BigInt v(t);
  return neg ? BigInt(-v) : v;
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos)
    return make_rational(parse_bigint(s.substr(0, slash), "rational"),
                         parse_bigint(s.substr(slash + 1), "rational"));
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(parse_bigint(s, "rational"));
  std::string frac = s.substr(dot + 1);
  BigInt scale = mp::pow(BigInt(10), static_cast<unsigned>(frac.size()));
  std::string whole = s.substr(0, dot);
  bool neg = !whole.empty() && whole[0] == '-';
  BigInt w = parse_bigint(whole.empty() || whole == "-" ? "0" : whole, "rational");
  BigInt f = frac.empty() ? BigInt(0) : parse_bigint(frac, "rational");
  Rational r = Rational(mp::abs(w)) + Rational(f, scale);
  return neg ? -r : r;
}

}  // namespace nlslab
