#pragma once

// Quartet arithmetic: Omega_r, the classes A(d) relative to Lambda, and the
// extremal values L_1 and U_0.

#include "nlslab/diophantine.hpp"
#include "nlslab/lambda_set.hpp"
#include "nlslab/lattice.hpp"
#include "nlslab/numeric.hpp"

#include <optional>
#include <ostream>
#include <vector>

namespace nlslab {

/// Omega_r = sum (-1)^(i+1) j_i^2 + r^2 sum (-1)^(i+1) k_i^2.
Scalar omega_r(const Quartet& q, const Scalar& r2);
QuadNum omega_exact(const Quartet& q, const QuadNum& r2);
double omega_double(const Quartet& q, double r2);

/// Number of modes outside Lambda; nullopt when momentum is not conserved.
std::optional<int> classify_quartet(const Quartet& q, const LambdaSet& set);

/// Canonical representatives of A(1), sorted.
std::vector<Quartet> enumerate_A1(const LambdaSet& set);

struct ExtremalValue {
  Scalar value;
  Quartet witness;
};

/// min over A(1) of |Omega_omega|.
ExtremalValue compute_L1(const LambdaSet& set, const Scalar& r2);

struct U0Result {
  Scalar value;
  std::optional<Quartet> witness;
  std::size_t resonant_quartets = 0;  // nontrivial, closed, Omega_{p/q} = 0
  bool all_families = true;           // every such quartet is a declared family
};

/// max over closed quartets inside Lambda with Omega_{p/q} = 0 of |Omega_omega|.
U0Result compute_U0(const LambdaSet& set, const Scalar& r2);

struct L1Hypothesis {
  bool holds = false;
  /// 16 * max|n~|^2 * |q^2 omega^2 / p^2 - 1|, certified upper bound.
  Rational lhs_upper{0};
};

/// Concrete form of the smallness hypothesis that yields |Omega_omega| >= p^2/2
/// on A(1): the bound above is <= 1.
L1Hypothesis check_L1_hypothesis(const LambdaSet& set, const OmegaSpec& omega);

/// CSV: j1,k1,...,j4,k4,omega_value,class_d
void write_quartet_csv(std::ostream& out, const std::vector<Quartet>& quartets,
                       const LambdaSet& set, const Scalar& r2);

}  // namespace nlslab
