#pragma once

// Weak Birkhoff normal form: the quartic generating function F supported on
// A(1), the homological identity {F, H2} + H(4,1) = 0, and the time-one flow
// Gamma of X_F.

#include "nlslab/diophantine.hpp"
#include "nlslab/lambda_set.hpp"
#include "nlslab/ode.hpp"
#include "nlslab/polynomial.hpp"
#include "nlslab/state.hpp"

#include <optional>
#include <ostream>
#include <unordered_map>
#include <vector>

namespace nlslab {

struct FTerm {
  Quartet quartet;                    // canonical, in A(1)
  Scalar omega;                       // Omega_omega(quartet)
  std::optional<ExactComplex> exact;  // 1/(4i Omega) when Omega is exact
  cplx coefficient;                   // per ordered quartet
  double modulus_upper = 0;           // certified bound on |coefficient|
  int multiplicity = 1;               // ordered quartets sharing the monomial
};

class GeneratingFunction {
 public:
  GeneratingFunction() = default;
  GeneratingFunction(std::vector<FTerm> terms, Scalar omega2);

  const std::vector<FTerm>& terms() const { return terms_; }
  /// Modes touched by some term, sorted.
  const std::vector<Mode>& support() const { return support_; }
  std::optional<std::size_t> support_index(const Mode& n) const;
  const Scalar& omega2() const { return omega2_; }
  bool is_exact() const;
  bool empty() const { return terms_.empty(); }

  /// F on canonical monomials with coefficient multiplicity * c.
  Polynomial<cplx> polynomial() const;
  Polynomial<ExactComplex> exact_polynomial() const;  // domain error unless exact

  /// F(rho) for amplitudes indexed like support().
  double value(const CVec& rho) const;
  /// X_F = 2i dF/d conj(rho) on the support.
  void field(const CVec& rho, CVec& out) const;

  /// DX_F(rho)[v] (X_F is cubic, so this is exact polynomial algebra).
  void field_derivative(const CVec& rho, const CVec& v, CVec& out) const;

  /// Replaces one coefficient; used to probe the residual.
  GeneratingFunction with_perturbed(std::size_t term, cplx delta) const;

 private:
  struct Ordered {
    std::uint32_t i1, i2, i3, i4;
    cplx c;
  };
  void index();
  std::vector<FTerm> terms_;
  Scalar omega2_{QuadNum(1)};
  std::vector<Mode> support_;
  std::unordered_map<Mode, std::size_t, ModeHash> slot_;
  std::vector<Ordered> ordered_;
};

struct BuildFOptions {
  /// Require the smallness hypothesis that gives |Omega| >= p^2/2 on A(1).
  bool check_hypothesis = false;
};

/// One term per canonical A(1) quartet with coefficient 1/(4i Omega_omega).
GeneratingFunction build_F(const LambdaSet& set, const OmegaSpec& omega,
                           const BuildFOptions& options = {});

struct ResidualReport {
  double max_abs = 0;
  bool exact = false;          // computed in exact arithmetic
  bool exactly_zero = false;   // only meaningful when exact
  std::size_t monomials = 0;   // nonzero monomials in H(4,1)
  std::size_t residual_terms = 0;
};

/// Max coefficient of {F, H2} + H(4,1); H(4,1) is expanded from ordered
/// quartets on F's support, independently of the F term list.
ResidualReport homological_residual(const GeneratingFunction& F, const LambdaSet& set,
                                    const OmegaSpec& omega, bool exact = true);

/// Largest eta with eta^2 / L1 <= bound.
double default_eta(const Scalar& L1, double bound = 1e-2);

enum class Direction { forward, inverse };

struct BirkhoffMap {
  const GeneratingFunction* generating = nullptr;
  Direction direction = Direction::forward;
  IntegratorConfig flow{1e-13, 1e-15};
  double eta = 0;  // 0: no ball check
};

/// Time +1 (or -1) flow of X_F. Modes outside supp F are copied unchanged;
/// the output support is the union of the input support and supp F.
SparseFourierState gamma_apply(const BirkhoffMap& map, const SparseFourierState& state);

/// Gamma(state) together with the derivative DGamma(state)[v], from the
/// variational equation of X_F. v is given on the output support of gamma_apply.
struct GammaTangent {
  SparseFourierState value;
  CVec derivative;  // indexed like value.modes
};
GammaTangent gamma_apply_tangent(const BirkhoffMap& map, const SparseFourierState& state,
                                 const CVec& v);

/// CSV: j1,k1,...,j4,k4,omega,re,im.
void write_F_csv(std::ostream& out, const GeneratingFunction& F);

}  // namespace nlslab
