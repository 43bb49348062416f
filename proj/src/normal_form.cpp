#include "nlslab/normal_form.hpp"

#include "nlslab/error.hpp"
#include "nlslab/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace nlslab {

namespace {

// Orderings of a canonical quartet that share its monomial.
std::vector<Quartet> orderings(const Quartet& q) {
  std::set<Quartet> out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Quartet o = q;
      if (a) std::swap(o.n[0], o.n[2]);
      if (b) std::swap(o.n[1], o.n[3]);
      out.insert(o);
    }
  return {out.begin(), out.end()};
}

QuadNum eigen_exact(const Mode& n, const QuadNum& w2) {
  return QuadNum(Rational(n.j * n.j)) + w2 * QuadNum(Rational(n.k * n.k));
}

}  // namespace

GeneratingFunction::GeneratingFunction(std::vector<FTerm> terms, Scalar omega2)
    : terms_(std::move(terms)), omega2_(std::move(omega2)) {
  index();
}

void GeneratingFunction::index() {
  std::set<Mode> modes;
  for (const auto& t : terms_)
    for (const auto& m : t.quartet.n) modes.insert(m);
  support_.assign(modes.begin(), modes.end());
  slot_.clear();
  for (std::size_t i = 0; i < support_.size(); ++i) slot_[support_[i]] = i;
  ordered_.clear();
  for (const auto& t : terms_)
    for (const auto& o : orderings(t.quartet))
      ordered_.push_back({static_cast<std::uint32_t>(slot_.at(o.n[0])),
                          static_cast<std::uint32_t>(slot_.at(o.n[1])),
                          static_cast<std::uint32_t>(slot_.at(o.n[2])),
                          static_cast<std::uint32_t>(slot_.at(o.n[3])), t.coefficient});
}

std::optional<std::size_t> GeneratingFunction::support_index(const Mode& n) const {
  auto it = slot_.find(n);
  if (it == slot_.end()) return std::nullopt;
  return it->second;
}

bool GeneratingFunction::is_exact() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const FTerm& t) { return t.exact.has_value(); });
}

Polynomial<cplx> GeneratingFunction::polynomial() const {
  Polynomial<cplx> p;
  for (const auto& t : terms_)
    p.add(quartet_monomial(t.quartet), static_cast<double>(t.multiplicity) * t.coefficient);
  return p;
}

Polynomial<ExactComplex> GeneratingFunction::exact_polynomial() const {
  if (!is_exact()) fail(ErrorKind::domain, "generating function has inexact coefficients");
  Polynomial<ExactComplex> p;
  for (const auto& t : terms_)
    p.add(quartet_monomial(t.quartet),
          ExactComplex(QuadNum(t.multiplicity)) * *t.exact);
  return p;
}

double GeneratingFunction::value(const CVec& rho) const {
  cplx s = 0;
  for (const auto& o : ordered_)
    s += o.c * rho[o.i1] * std::conj(rho[o.i2]) * rho[o.i3] * std::conj(rho[o.i4]);
  return s.real();
}

void GeneratingFunction::field(const CVec& rho, CVec& out) const {
  out.assign(support_.size(), 0);
  const cplx two_i(0, 2);
  for (const auto& o : ordered_) {
    const cplx a = two_i * o.c * rho[o.i1] * rho[o.i3];
    out[o.i2] += a * std::conj(rho[o.i4]);
    out[o.i4] += a * std::conj(rho[o.i2]);
  }
}

void GeneratingFunction::field_derivative(const CVec& rho, const CVec& v, CVec& out) const {
  out.assign(support_.size(), 0);
  const cplx two_i(0, 2);
  for (const auto& o : ordered_) {
    const cplx c = two_i * o.c;
    const cplx a = rho[o.i1] * rho[o.i3];
    const cplx da = v[o.i1] * rho[o.i3] + rho[o.i1] * v[o.i3];
    out[o.i2] += c * (da * std::conj(rho[o.i4]) + a * std::conj(v[o.i4]));
    out[o.i4] += c * (da * std::conj(rho[o.i2]) + a * std::conj(v[o.i2]));
  }
}

GeneratingFunction GeneratingFunction::with_perturbed(std::size_t term, cplx delta) const {
  auto terms = terms_;
  terms.at(term).coefficient += delta;
  terms[term].exact.reset();
  return GeneratingFunction(std::move(terms), omega2_);
}

GeneratingFunction build_F(const LambdaSet& set, const OmegaSpec& omega, const BuildFOptions& options) {
  if (options.check_hypothesis) {
    auto h = check_L1_hypothesis(set, omega);
    if (!h.holds)
      fail(ErrorKind::domain, "hypothesis-violated: smallness bound " +
                                  std::to_string(to_double(h.lhs_upper)) + " exceeds 1");
  }
  const Scalar r2 = omega.squared();
  std::vector<FTerm> terms;
  for (const auto& q : enumerate_A1(set)) {
    FTerm t;
    t.quartet = q;
    t.omega = omega_r(q, r2);
    auto sg = t.omega.sign();
    if (!sg) fail(ErrorKind::precision_exhausted, "cannot certify Omega != 0 on " + q.to_string());
    if (*sg == 0) fail(ErrorKind::domain, "resonant-A1: Omega vanishes on " + q.to_string());
    if (t.omega.is_exact()) {
      QuadNum im = -(QuadNum(4) * t.omega.exact()).inverse();
      t.coefficient = cplx(0, im.to_double());
      t.exact = ExactComplex(QuadNum(0), std::move(im));
    } else {
      t.coefficient = cplx(0, -0.25 / t.omega.to_double());
    }
    Rational lo = t.omega.abs().interval(30).lo;
    t.modulus_upper = std::nextafter(to_double(Rational(1) / (4 * lo)),
                                     std::numeric_limits<double>::infinity());
    t.multiplicity = q.multiplicity();
    terms.push_back(std::move(t));
  }
  return GeneratingFunction(std::move(terms), r2);
}

ResidualReport homological_residual(const GeneratingFunction& F, const LambdaSet& set,
                                    const OmegaSpec& omega, bool exact) {
  ResidualReport rep;
  // H(4,1): each ordered quartet with exactly one mode outside Lambda, 1/4 each.
  auto lam = set.modes();
  std::vector<Monomial> h41;
  for (int slot = 0; slot < 4; ++slot)
    for (const auto& a : lam)
      for (const auto& b : lam)
        for (const auto& c : lam) {
          std::array<Mode, 3> in{a, b, c};
          Quartet q;
          Mode sum{0, 0};
          for (int i = 0, k = 0; i < 4; ++i) {
            if (i == slot) continue;
            q.n[i] = in[k++];
            sum = (i % 2 == 0) ? sum + q.n[i] : sum - q.n[i];
          }
          // n1 - n2 + n3 - n4 = 0
          q.n[slot] = (slot % 2 == 0) ? Mode{0, 0} - sum : sum;
          if (set.contains(q.n[slot])) continue;
          if (q.n[1] == q.n[0] || q.n[1] == q.n[2]) continue;
          h41.push_back(quartet_monomial(q));
        }

  auto finish = [&](const auto& residual) {
    rep.residual_terms = residual.size();
    rep.max_abs = residual.max_abs_coefficient();
  };

  // H2 on every mode that can meet F or H(4,1)
  std::set<Mode> modes(F.support().begin(), F.support().end());
  for (const auto& m : h41)
    for (const auto& v : m) modes.insert(v.n);

  if (exact && F.is_exact() && omega.is_exact()) {
    rep.exact = true;
    const QuadNum w2 = omega.squared().exact();
    Polynomial<ExactComplex> H2, H41;
    const QuadNum half(Rational(1, 2)), quarter(Rational(1, 4));
    for (const auto& n : modes)
      H2.add({{n, false}, {n, true}}, ExactComplex(half * eigen_exact(n, w2)));
    for (const auto& m : h41) H41.add(m, ExactComplex(quarter));
    rep.monomials = H41.size();
    auto R = poisson_bracket(F.exact_polynomial(), H2);
    R += H41;
    finish(R);
    rep.exactly_zero = R.empty();
  } else {
    const double w2 = omega.squared().to_double();
    Polynomial<cplx> H2, H41;
    for (const auto& n : modes)
      H2.add({{n, false}, {n, true}},
             0.5 * (static_cast<double>(n.j * n.j) + w2 * static_cast<double>(n.k * n.k)));
    for (const auto& m : h41) H41.add(m, 0.25);
    rep.monomials = H41.size();
    auto R = poisson_bracket(F.polynomial(), H2);
    R += H41;
    finish(R);
  }
  return rep;
}

double default_eta(const Scalar& L1, double bound) {
  double l = L1.to_double();
  if (!(l > 0)) fail(ErrorKind::domain, "L1 must be positive");
  return std::sqrt(bound * l);
}

SparseFourierState gamma_apply(const BirkhoffMap& map, const SparseFourierState& state) {
  if (!map.generating) fail(ErrorKind::config, "Birkhoff map without generating function");
  const GeneratingFunction& F = *map.generating;
  const double norm0 = ell1_norm(state);
  if (map.eta > 0 && !(norm0 < map.eta))
    fail(ErrorKind::domain, "ball-escape: input norm " + std::to_string(norm0) + " is not below eta");

  // output support: input modes, then the remaining modes of supp F
  std::vector<Mode> modes = state.modes;
  CVec amp = state.amp;
  for (const auto& n : F.support())
    if (!state.find(n)) {
      modes.push_back(n);
      amp.push_back(0);
    }
  const auto& supp = F.support();
  CVec y(supp.size());
  double outside = 0;
  for (std::size_t i = 0; i < supp.size(); ++i) y[i] = state.value(supp[i]);
  for (std::size_t i = 0; i < state.size(); ++i)
    if (!F.support_index(state.modes[i])) outside += std::abs(state.amp[i]);

  if (!supp.empty()) {
    VectorField f = [&F](double, const CVec& x, CVec& dx) { F.field(x, dx); };
    const double t1 = map.direction == Direction::forward ? 1.0 : -1.0;
    StepObserver obs;
    if (map.eta > 0)
      obs = [&](const DenseStep& s) {
        if (ell1(s.y1) + outside > 2 * map.eta)
          fail(ErrorKind::domain, "ball-escape at flow time " + std::to_string(s.t1));
        return true;
      };
    integrate(f, 0, y, t1, map.flow, obs);
    for (std::size_t i = 0; i < modes.size(); ++i)
      if (auto k = F.support_index(modes[i])) amp[i] = y[*k];
  }
  return SparseFourierState(std::move(modes), std::move(amp), state.frame, state.t);
}

GammaTangent gamma_apply_tangent(const BirkhoffMap& map, const SparseFourierState& state,
                                 const CVec& v) {
  if (!map.generating) fail(ErrorKind::config, "Birkhoff map without generating function");
  const GeneratingFunction& F = *map.generating;
  std::vector<Mode> modes = state.modes;
  CVec amp = state.amp;
  for (const auto& n : F.support())
    if (!state.find(n)) {
      modes.push_back(n);
      amp.push_back(0);
    }
  if (v.size() != modes.size()) fail(ErrorKind::config, "tangent vector does not match the output support");
  CVec dv = v;
  const auto& supp = F.support();
  const std::size_t m = supp.size();
  if (m > 0) {
    std::vector<std::size_t> where(m);
    for (std::size_t i = 0; i < modes.size(); ++i)
      if (auto k = F.support_index(modes[i])) where[*k] = i;
    CVec y(2 * m);
    for (std::size_t k = 0; k < m; ++k) {
      y[k] = amp[where[k]];
      y[m + k] = v[where[k]];
    }
    VectorField f = [&F, m](double, const CVec& x, CVec& dx) {
      CVec a(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(m));
      CVec b(x.begin() + static_cast<std::ptrdiff_t>(m), x.end());
      CVec fa, fb;
      F.field(a, fa);
      F.field_derivative(a, b, fb);
      std::copy(fa.begin(), fa.end(), dx.begin());
      std::copy(fb.begin(), fb.end(), dx.begin() + static_cast<std::ptrdiff_t>(m));
    };
    integrate(f, 0, y, map.direction == Direction::forward ? 1.0 : -1.0, map.flow);
    for (std::size_t k = 0; k < m; ++k) {
      amp[where[k]] = y[k];
      dv[where[k]] = y[m + k];
    }
  }
  return {SparseFourierState(std::move(modes), std::move(amp), state.frame, state.t), std::move(dv)};
}

void write_F_csv(std::ostream& out, const GeneratingFunction& F) {
  out << "j1,k1,j2,k2,j3,k3,j4,k4,omega,re,im\n";
  out.precision(17);
  for (const auto& t : F.terms()) {
    for (const auto& m : t.quartet.n) out << m.j << "," << m.k << ",";
    out << t.omega.to_double() << "," << t.coefficient.real() << "," << t.coefficient.imag() << "\n";
  }
}

}  // namespace nlslab
