#pragma once

// Sparse polynomials in the variables rho_n and conj(rho_n), used to expand
// Hamiltonians symbolically and to take Poisson brackets.

#include "nlslab/lattice.hpp"
#include "nlslab/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <vector>

namespace nlslab {

struct Var {
  Mode n;
  bool conj = false;
  friend auto operator<=>(const Var&, const Var&) = default;
};

/// Sorted multiset of variables.
using Monomial = std::vector<Var>;

/// Quartet monomial rho_1 conj(rho_2) rho_3 conj(rho_4).
inline Monomial quartet_monomial(const Quartet& q) {
  Monomial m{{q.n[0], false}, {q.n[1], true}, {q.n[2], false}, {q.n[3], true}};
  std::sort(m.begin(), m.end());
  return m;
}

/// Gaussian element of Q(sqrt d): re + i im.
struct ExactComplex {
  QuadNum re, im;

  ExactComplex() = default;
  ExactComplex(QuadNum r, QuadNum i = QuadNum(0)) : re(std::move(r)), im(std::move(i)) {}  // NOLINT
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  friend ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  ExactComplex& operator+=(const ExactComplex& o) { return *this = *this + o; }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
  /// Modulus rounded to double.
  double abs_bound() const { return std::hypot(re.to_double(), im.to_double()); }
};

inline bool coeff_is_zero(const ExactComplex& c) { return c.is_zero(); }
inline bool coeff_is_zero(const std::complex<double>& c) { return c == 0.0; }
inline ExactComplex imaginary_unit(const ExactComplex*) { return {QuadNum(0), QuadNum(1)}; }
inline std::complex<double> imaginary_unit(const std::complex<double>*) { return {0, 1}; }
inline double coeff_abs(const ExactComplex& c) { return c.abs_bound(); }
inline double coeff_abs(const std::complex<double>& c) { return std::abs(c); }

template <class C>
class Polynomial {
 public:
  using Terms = std::map<Monomial, C>;

  void add(const Monomial& m, const C& c) {
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (coeff_is_zero(it->second)) terms_.erase(it);
    } else if (coeff_is_zero(c)) {
      terms_.erase(it);
    }
  }
  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  Polynomial scaled(const C& s) const {
    Polynomial p;
    for (const auto& [m, c] : terms_) p.add(m, c * s);
    return p;
  }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  C coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? C() : it->second;
  }
  double max_abs_coefficient() const {
    double r = 0;
    for (const auto& [m, c] : terms_) r = std::max(r, coeff_abs(c));
    return r;
  }

  /// All first derivatives at once: var -> d/d(var).
  std::map<Var, Polynomial> gradient() const {
    std::map<Var, Polynomial> g;
    for (const auto& [m, c] : terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (i > 0 && m[i] == m[i - 1]) continue;
        std::size_t k = i;
        while (k < m.size() && m[k] == m[i]) ++k;
        Monomial rest = m;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        C mult = c;
        for (std::size_t e = 1; e < k - i; ++e) mult += c;
        g[m[i]].add(rest, mult);
      }
    }
    return g;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial p;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m;
        m.reserve(ma.size() + mb.size());
        std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m));
        p.add(m, ca * cb);
      }
    return p;
  }

  template <class F>
  std::complex<double> evaluate(F&& value_of) const {
    std::complex<double> s = 0;
    for (const auto& [m, c] : terms_) {
      std::complex<double> t = to_complex(c);
      for (const auto& v : m) t *= v.conj ? std::conj(value_of(v.n)) : value_of(v.n);
      s += t;
    }
    return s;
  }

 private:
  static std::complex<double> to_complex(const std::complex<double>& c) { return c; }
  static std::complex<double> to_complex(const ExactComplex& c) {
    return {c.re.to_double(), c.im.to_double()};
  }
  Terms terms_;
};

/// {F, G} = 2i sum_n (dF/d conj(rho_n) dG/d rho_n - dF/d rho_n dG/d conj(rho_n)),
/// the bracket of the flow d rho_n / dt = 2i dH/d conj(rho_n).
template <class C>
Polynomial<C> poisson_bracket(const Polynomial<C>& F, const Polynomial<C>& G) {
  auto gf = F.gradient();
  auto gg = G.gradient();
  Polynomial<C> out;
  const C two_i = imaginary_unit(static_cast<const C*>(nullptr)) + imaginary_unit(static_cast<const C*>(nullptr));
  const C minus_two_i = C() - two_i;
  for (const auto& [v, dF] : gf) {
    Var partner{v.n, !v.conj};
    auto it = gg.find(partner);
    if (it == gg.end()) continue;
    // v conj: + dF/d conj * dG/d rho; v plain: - dF/d rho * dG/d conj
    out += (dF * it->second).scaled(v.conj ? two_i : minus_two_i);
  }
  return out;
}

/// Field 2i dH/d conj(rho_n) at a point.
template <class C, class F>
std::complex<double> hamiltonian_field(const std::map<Var, Polynomial<C>>& gradient, const Mode& n,
                                       F&& value_of) {
  auto it = gradient.find(Var{n, true});
  if (it == gradient.end()) return 0;
  return std::complex<double>(0, 2) * it->second.evaluate(value_of);
}

}  // namespace nlslab
