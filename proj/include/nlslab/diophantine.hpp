#pragma once

// Continued fractions, convergents with certified error brackets, and the
// psi-approximability tests used to pick the scaling (p, q).

#include "nlslab/numeric.hpp"

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace nlslab {

/// (a + b*sqrt(d)) / c.
struct QuadraticSurd {
  BigInt a, b, d, c;
};

struct RationalValue {
  BigInt num, den;
};

/// Truncated decimal expansion: the value lies in [x, x + 10^-precision].
struct HighPrecisionDecimal {
  std::string digits;
  unsigned precision = 0;
};

class OmegaSpec {
 public:
  using Variant = std::variant<QuadraticSurd, RationalValue, HighPrecisionDecimal>;

  static OmegaSpec surd(BigInt a, BigInt b, BigInt d, BigInt c);
  static OmegaSpec sqrt_of(const BigInt& d) { return surd(0, 1, d, 1); }
  static OmegaSpec rational(BigInt num, BigInt den);
  static OmegaSpec decimal(const std::string& digits);

  /// Accepts "sqrt:d", "surd:a,b,d,c", "rat:p/q", "dec:<digits>" and a bare
  /// integer or p/q.
  static OmegaSpec parse(const std::string& text);
  std::string to_string() const;

  const Variant& value() const { return v_; }
  bool is_rational() const { return std::holds_alternative<RationalValue>(v_); }
  bool is_exact() const { return !std::holds_alternative<HighPrecisionDecimal>(v_); }

  /// Exact value; config error for decimals.
  QuadNum exact() const;
  /// omega itself and omega^2 as exact-or-interval scalars.
  Scalar as_scalar() const;
  Scalar squared() const;
  RationalInterval enclosure(unsigned digits = 60) const;
  double to_double() const;

 private:
  explicit OmegaSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

struct CFExpansion {
  std::vector<BigInt> quotients;
  bool terminated = false;  // rational input fully expanded
};

struct Convergent {
  BigInt p, q;
  std::size_t index = 0;
  /// Certified bracket of |omega - p/q|.
  Rational err_lo{0}, err_hi{0};
  std::optional<BigInt> q_next;
};

struct ApproxProfile {
  enum class Kind { log, power };
  Kind kind = Kind::log;
  Rational c{1};
  Rational tau{1};

  static ApproxProfile log_profile(Rational c = 1);
  static ApproxProfile power_profile(Rational c, Rational tau);
  static ApproxProfile parse(const std::string& text);  // "log:c" | "power:c,tau"
  std::string to_string() const;
};

CFExpansion expand_continued_fraction(const OmegaSpec& omega, std::size_t depth);
std::vector<Convergent> convergents(const OmegaSpec& omega, std::size_t depth);

/// psi(q); Log: c/(q log q), Power: c/q^(1+tau). Natural logarithms.
Real psi_value(const ApproxProfile& profile, const BigInt& q);
/// q * psi(q), evaluated without the cancelling factor q.
Real q_psi(const ApproxProfile& profile, const BigInt& q);

struct PsiCheck {
  bool holds = false;
  Real margin;  // psi(q)/q - |omega - p/q|
};

PsiCheck is_psi_convergent(const OmegaSpec& omega, const BigInt& p, const BigInt& q,
                           const ApproxProfile& profile);

using ConvergentConstraint = std::function<bool(const BigInt& q, const Real& psi)>;

Convergent select_convergent(const OmegaSpec& omega, const ApproxProfile& profile,
                             const ConvergentConstraint& constraint,
                             std::size_t max_depth = 64);

struct GuardResult {
  bool passed = true;
  std::optional<Convergent> witness;
  std::size_t depth_checked = 0;
  std::size_t q_min = 0;
  static constexpr const char* label = "finite-depth evidence";
};

/// Checks |omega - p/q| >= q^-(1 + log q) on convergents with q >= q_min.
GuardResult liouville_guard(const OmegaSpec& omega, std::size_t depth,
                            std::size_t q_min = 10);

/// Rational enclosure of |omega - p/q|.
RationalInterval abs_error_enclosure(const OmegaSpec& omega, const BigInt& p,
                                     const BigInt& q);

}  // namespace nlslab
