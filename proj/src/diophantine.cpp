#include "nlslab/diophantine.hpp"

#include "nlslab/error.hpp"

#include <boost/multiprecision/integer.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace nlslab {

namespace mp = boost::multiprecision;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::size_t digits10(const BigInt& x) { return BigInt(mp::abs(x)).str().size(); }

RationalInterval decimal_interval(const HighPrecisionDecimal& dec) {
  const std::string& s = dec.digits;
  auto dot = s.find('.');
  std::string intpart = dot == std::string::npos ? s : s.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : s.substr(dot + 1);
  BigInt scale = mp::pow(BigInt(10), static_cast<unsigned>(frac.size()));
  BigInt num = parse_bigint(intpart.empty() ? "0" : intpart, "decimal") * scale;
  if (!frac.empty()) num += parse_bigint(frac, "decimal");
  Rational lo(num, scale);
  Rational hi = lo + Rational(BigInt(1), mp::pow(BigInt(10), dec.precision));
  return {lo, hi};
}

// Interval continued-fraction step state for decimals.
struct IntervalCF {
  RationalInterval x;
  bool exhausted = false;

  // Returns the next quotient if both endpoints share the same floor.
  std::optional<BigInt> next() {
    if (exhausted) return std::nullopt;
    BigInt a = floor_of(x.lo);
    if (floor_of(x.hi) != a) {
      exhausted = true;
      return std::nullopt;
    }
    Rational lo_frac = x.lo - Rational(a);
    Rational hi_frac = x.hi - Rational(a);
    if (lo_frac == 0) {
      // next complete quotient would be unbounded
      x = {Rational(0), Rational(0)};
      exhausted = true;
      return a;
    }
    x = {1 / hi_frac, 1 / lo_frac};
    return a;
  }
};

// Up to `count` quotients; stops early on termination or exhausted precision.
struct QuotientStream {
  std::vector<BigInt> quotients;
  bool terminated = false;
  bool precision_exhausted = false;
};

QuotientStream quotient_stream(const OmegaSpec& omega, std::size_t count) {
  QuotientStream out;
  const auto& v = omega.value();
  if (const auto* r = std::get_if<RationalValue>(&v)) {
    BigInt a = r->num, b = r->den;
    while (out.quotients.size() < count) {
      out.quotients.push_back(floor_div(a, b));
      BigInt rem = a - out.quotients.back() * b;
      if (rem == 0) {
        out.terminated = true;
        break;
      }
      a = b;
      b = rem;
    }
  } else if (std::holds_alternative<QuadraticSurd>(v)) {
    QuadNum x = omega.exact();
    while (out.quotients.size() < count) {
      BigInt a = x.floor();
      out.quotients.push_back(a);
      x = (x - QuadNum(a)).inverse();
    }
  } else {
    IntervalCF cf{decimal_interval(std::get<HighPrecisionDecimal>(v))};
    while (out.quotients.size() < count) {
      auto a = cf.next();
      if (!a) {
        out.precision_exhausted = true;
        break;
      }
      out.quotients.push_back(*a);
    }
  }
  return out;
}

std::vector<Convergent> build_convergents(const OmegaSpec& omega, const QuotientStream& qs,
                                          std::size_t depth) {
  std::vector<Convergent> out;
  BigInt p_prev2 = 0, q_prev2 = 1, p_prev = 1, q_prev = 0;
  std::vector<BigInt> ps, qv;
  for (const auto& a : qs.quotients) {
    BigInt p = a * p_prev + p_prev2;
    BigInt q = a * q_prev + q_prev2;
    ps.push_back(p);
    qv.push_back(q);
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = p;
    q_prev = q;
  }
  std::size_t n = std::min(depth, ps.size());
  for (std::size_t i = 0; i < n; ++i) {
    Convergent c;
    c.p = ps[i];
    c.q = qv[i];
    c.index = i;
    if (i + 1 < qv.size()) c.q_next = qv[i + 1];
    RationalInterval e = abs_error_enclosure(omega, c.p, c.q);
    c.err_lo = e.lo;
    c.err_hi = e.hi;
    if (c.q_next) {
      Rational lo7(BigInt(1), c.q * (*c.q_next + c.q));
      Rational hi7(BigInt(1), c.q * *c.q_next);
      if (lo7 > c.err_lo) c.err_lo = lo7;
      if (hi7 < c.err_hi) c.err_hi = hi7;
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

// --- OmegaSpec ---------------------------------------------------------------

OmegaSpec OmegaSpec::surd(BigInt a, BigInt b, BigInt d, BigInt c) {
  if (c == 0) fail(ErrorKind::config, "surd denominator c must be nonzero");
  if (b == 0) fail(ErrorKind::config, "surd with b = 0 is rational; use rat:p/q");
  if (d <= 0) fail(ErrorKind::config, "surd radicand must be positive");
  if (is_perfect_square(d)) fail(ErrorKind::config, "surd radicand must be non-square");
  if (c < 0) {
    a = -a;
    b = -b;
    c = -c;
  }
  OmegaSpec w(QuadraticSurd{a, b, d, c});
  if (w.exact() < QuadNum(1)) fail(ErrorKind::config, "omega must lie in [1, inf)");
  return w;
}

OmegaSpec OmegaSpec::rational(BigInt num, BigInt den) {
  if (den == 0) fail(ErrorKind::config, "rational omega with zero denominator");
  Rational r(num, den);
  if (r < 1) fail(ErrorKind::config, "omega must lie in [1, inf)");
  return OmegaSpec(RationalValue{mp::numerator(r), mp::denominator(r)});
}

OmegaSpec OmegaSpec::decimal(const std::string& digits) {
  auto dot = digits.find('.');
  unsigned prec = dot == std::string::npos ? 0 : static_cast<unsigned>(digits.size() - dot - 1);
  for (char ch : digits)
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '.'))
      fail(ErrorKind::config, "malformed decimal omega '" + digits + "'");
  OmegaSpec w(HighPrecisionDecimal{digits, prec});
  if (w.enclosure().lo < 1) fail(ErrorKind::config, "omega must lie in [1, inf)");
  return w;
}

OmegaSpec OmegaSpec::parse(const std::string& text) {
  auto colon = text.find(':');
  std::string kind = colon == std::string::npos ? "" : text.substr(0, colon);
  std::string body = colon == std::string::npos ? text : text.substr(colon + 1);
  if (kind == "sqrt") return sqrt_of(parse_bigint(body, "sqrt:d"));
  if (kind == "surd") {
    auto parts = split(body, ',');
    if (parts.size() != 4) fail(ErrorKind::config, "surd form is surd:a,b,d,c");
    return surd(parse_bigint(parts[0], "surd"), parse_bigint(parts[1], "surd"),
                parse_bigint(parts[2], "surd"), parse_bigint(parts[3], "surd"));
  }
  if (kind == "dec") return decimal(body);
  if (kind == "rat" || kind.empty()) {
    auto slash = body.find('/');
    if (slash == std::string::npos) return rational(parse_bigint(body, "rat"), 1);
    return rational(parse_bigint(body.substr(0, slash), "rat"),
                    parse_bigint(body.substr(slash + 1), "rat"));
  }
  fail(ErrorKind::config, "unknown omega form '" + text + "'");
}

std::string OmegaSpec::to_string() const {
  std::ostringstream os;
  if (const auto* s = std::get_if<QuadraticSurd>(&v_)) {
    if (s->a == 0 && s->b == 1 && s->c == 1)
      os << "sqrt:" << s->d;
    else
      os << "surd:" << s->a << "," << s->b << "," << s->d << "," << s->c;
  } else if (const auto* r = std::get_if<RationalValue>(&v_)) {
    os << "rat:" << r->num << "/" << r->den;
  } else {
    os << "dec:" << std::get<HighPrecisionDecimal>(v_).digits;
  }
  return os.str();
}

QuadNum OmegaSpec::exact() const {
  if (const auto* s = std::get_if<QuadraticSurd>(&v_))
    return QuadNum(Rational(s->a, s->c), Rational(s->b, s->c), s->d);
  if (const auto* r = std::get_if<RationalValue>(&v_)) return QuadNum(Rational(r->num, r->den));
  fail(ErrorKind::config, "decimal omega has no exact value");
}

Scalar OmegaSpec::as_scalar() const {
  if (is_exact()) return Scalar(exact());
  return Scalar(enclosure());
}

Scalar OmegaSpec::squared() const {
  if (is_exact()) {
    QuadNum w = exact();
    return Scalar(w * w);
  }
  RationalInterval iv = enclosure();
  return Scalar(RationalInterval{iv.lo * iv.lo, iv.hi * iv.hi});
}

RationalInterval OmegaSpec::enclosure(unsigned digits) const {
  if (is_exact()) return enclose(exact(), digits);
  return decimal_interval(std::get<HighPrecisionDecimal>(v_));
}

double OmegaSpec::to_double() const {
  if (is_exact()) return exact().to_double();
  return static_cast<double>(enclosure().midpoint_real());
}

// --- profiles ----------------------------------------------------------------

ApproxProfile ApproxProfile::log_profile(Rational c) {
  if (c < 1) fail(ErrorKind::config, "psi constant c must be >= 1");
  ApproxProfile p;
  p.kind = Kind::log;
  p.c = c;
  return p;
}

ApproxProfile ApproxProfile::power_profile(Rational c, Rational tau) {
  if (c < 1) fail(ErrorKind::config, "psi constant c must be >= 1");
  if (tau <= 0) fail(ErrorKind::config, "psi exponent tau must be > 0");
  ApproxProfile p;
  p.kind = Kind::power;
  p.c = c;
  p.tau = tau;
  return p;
}


ApproxProfile ApproxProfile::parse(const std::string& text) {
  auto colon = text.find(':');
  std::string kind = text.substr(0, colon);
  std::string body = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "log") return log_profile(body.empty() ? Rational(1) : parse_rational(body));
  if (kind == "power") {
    auto parts = split(body, ',');
    if (parts.size() != 2) fail(ErrorKind::config, "power profile form is power:c,tau");
    return power_profile(parse_rational(parts[0]), parse_rational(parts[1]));
  }
  fail(ErrorKind::config, "unknown psi profile '" + text + "'");
}

std::string ApproxProfile::to_string() const {
  std::ostringstream os;
  if (kind == Kind::log)
    os << "log:" << c;
  else
    os << "power:" << c << "," << tau;
  return os.str();
}

// --- continued fractions -----------------------------------------------------

CFExpansion expand_continued_fraction(const OmegaSpec& omega, std::size_t depth) {
  if (depth == 0) fail(ErrorKind::config, "depth must be >= 1");
  QuotientStream qs = quotient_stream(omega, depth);
  if (qs.precision_exhausted)
    fail(ErrorKind::precision_exhausted,
         "decimal digits certify only " + std::to_string(qs.quotients.size()) + " quotients");
  return {qs.quotients, qs.terminated};
}

std::vector<Convergent> convergents(const OmegaSpec& omega, std::size_t depth) {
  if (depth == 0) fail(ErrorKind::config, "depth must be >= 1");
  QuotientStream qs = quotient_stream(omega, depth + 1);
  if (qs.precision_exhausted && qs.quotients.size() < depth)
    fail(ErrorKind::precision_exhausted,
         "decimal digits certify only " + std::to_string(qs.quotients.size()) + " quotients");
  return build_convergents(omega, qs, depth);
}

RationalInterval abs_error_enclosure(const OmegaSpec& omega, const BigInt& p, const BigInt& q) {
  if (q <= 0) fail(ErrorKind::domain, "convergent denominator must be positive");
  Rational pq(p, q);
  if (omega.is_exact()) {
    QuadNum e = (omega.exact() - QuadNum(pq)).abs();
    if (e.is_rational()) return RationalInterval::point(e.rational_part());
    // enough digits that the bracket is tight relative to 1/q^3
    unsigned digits = static_cast<unsigned>(30 + 3 * digits10(q));
    RationalInterval iv = enclose(e, digits);
    if (iv.lo < 0) iv.lo = 0;
    return iv;
  }
  RationalInterval w = omega.enclosure();
  return RationalInterval{w.lo - pq, w.hi - pq}.abs();
}

// --- psi ---------------------------------------------------------------------

Real psi_value(const ApproxProfile& profile, const BigInt& q) {
  if (profile.kind == ApproxProfile::Kind::log) {
    if (q < 2) fail(ErrorKind::domain, "log profile psi(q) needs q >= 2");
    Real qr(q);
    return to_real(profile.c) / (qr * mp::log(qr));
  }
  if (q < 1) fail(ErrorKind::domain, "power profile psi(q) needs q >= 1");
  return to_real(profile.c) / mp::pow(Real(q), 1 + to_real(profile.tau));
}

Real q_psi(const ApproxProfile& profile, const BigInt& q) {
  if (profile.kind == ApproxProfile::Kind::log) {
    if (q < 2) fail(ErrorKind::domain, "log profile psi(q) needs q >= 2");
    return to_real(profile.c) / mp::log(Real(q));
  }
  if (q < 1) fail(ErrorKind::domain, "power profile psi(q) needs q >= 1");
  return to_real(profile.c) / mp::pow(Real(q), to_real(profile.tau));
}

PsiCheck is_psi_convergent(const OmegaSpec& omega, const BigInt& p, const BigInt& q,
                           const ApproxProfile& profile) {
  if (q < 2) fail(ErrorKind::domain, "psi-convergent test needs q >= 2");
  Real threshold = psi_value(profile, q) / Real(q);
  RationalInterval e = abs_error_enclosure(omega, p, q);
  Real lo = to_real(e.lo), hi = to_real(e.hi);
  // relative slack covering the rounding of the 50-digit threshold
  Real slack = threshold * Real("1e-40");
  PsiCheck out;
  out.margin = threshold - (lo + hi) / 2;
  if (hi <= threshold - slack) {
    out.holds = true;
  } else if (lo > threshold + slack) {
    out.holds = false;
  } else {
    fail(ErrorKind::precision_exhausted, "cannot certify psi-convergent inequality");
  }
  return out;
}

Convergent select_convergent(const OmegaSpec& omega, const ApproxProfile& profile,
                             const ConvergentConstraint& constraint, std::size_t max_depth) {
  QuotientStream qs = quotient_stream(omega, max_depth + 1);
  auto conv = build_convergents(omega, qs, max_depth);
  for (const auto& c : conv) {
    if (c.q < 2) continue;
    if (!is_psi_convergent(omega, c.p, c.q, profile).holds) continue;
    if (constraint(c.q, psi_value(profile, c.q))) return c;
  }
  if (qs.precision_exhausted && conv.size() < max_depth)
    fail(ErrorKind::precision_exhausted, "decimal digits exhausted before a convergent qualified");
  fail(ErrorKind::not_found,
       "no qualifying convergent within depth " + std::to_string(max_depth));
}

GuardResult liouville_guard(const OmegaSpec& omega, std::size_t depth, std::size_t q_min) {
  if (omega.is_rational())
    fail(ErrorKind::domain, "Liouville guard undefined for rational omega");
  if (depth < 2) fail(ErrorKind::config, "guard depth must be >= 2");
  GuardResult out;
  out.q_min = q_min;
  auto conv = convergents(omega, depth);
  const Real tol("1e-30");
  for (const auto& c : conv) {
    ++out.depth_checked;
    if (c.q < BigInt(q_min) || c.q < 2) continue;
    Real lq = mp::log(Real(c.q));
    Real thr = -(1 + lq) * lq;  // log of q^-(1 + log q)
    if (c.err_lo > 0 && mp::log(to_real(c.err_lo)) >= thr + tol) continue;
    if (c.err_hi == 0 || mp::log(to_real(c.err_hi)) < thr - tol) {
      out.passed = false;
      out.witness = c;
      return out;
    }
    fail(ErrorKind::precision_exhausted, "cannot certify Liouville inequality");
  }
  return out;
}

}  // namespace nlslab
