#pragma once

// Parameters of the growth construction at its true scale, held as big
// integers and logarithms. Nothing here is ever exponentiated into a double.

#include "nlslab/diophantine.hpp"
#include "nlslab/numeric.hpp"

#include <optional>
#include <string>

namespace nlslab {

struct ScaleConstants {
  Rational alpha{10};           // R >= exp(alpha^N)
  Rational K{1};                // T0 <= K gamma N^2
  Rational eta_tilde{1, 10};    // R <= exp(2 (1 + eta_tilde) alpha^N)
  Rational sigma{1};            // toy-orbit exponent: |b_j| < delta^sigma off the target
  std::optional<Rational> gamma;  // default: smallest integer with 2 gamma sigma > s
};

struct PaperScaleInput {
  BigInt C{1000000};            // growth factor
  Rational mu{1};               // initial size (small-data variant), in (0, 1]
  Rational s{2};
  ApproxProfile profile = ApproxProfile::log_profile();
  Rational epsilon{0};
  ScaleConstants constants;
};

struct PaperScaleReport {
  std::int64_t N = 0;
  BigInt log_lambda;            // log lambda = 5^N, exact
  Real log10_lambda;
  Rational gamma;
  Real log_R_lo, log_R_hi;      // alpha^N and 2 (1 + eta_tilde) alpha^N
  /// log(q psi(q)) must not exceed this; lo uses the upper bracket of R.
  Real log_qpsi_max_lo, log_qpsi_max_hi;
  /// Threshold on log q (power profile) or log log q (log profile).
  std::string q_threshold_kind;
  Real q_threshold_lo, q_threshold_hi;
  Real log_T;                   // 2 log lambda + log(K gamma N^2)
  Real log10_T;
  Real beta;                    // log log T / log C
  std::optional<Real> beta_tilde;  // log((tau - 2s) log T) / log(C / mu), power profile with tau > 2s
};

/// Errors: config with "unsupported-s-range" unless s > 1; C >= 2; mu in (0, 1].
PaperScaleReport paper_scale_params(const PaperScaleInput& input);

std::string to_json(const PaperScaleReport& report, const PaperScaleInput& input);

}  // namespace nlslab
