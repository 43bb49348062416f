#include "nlslab/resonance.hpp"

#include "nlslab/error.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

namespace nlslab {

namespace {

Rational to_rational(i128 x) { return Rational(BigInt(to_string(x))); }

}  // namespace

Scalar omega_r(const Quartet& q, const Scalar& r2) {
  AlternatingSums s = alternating_sums(q);
  return Scalar(QuadNum(to_rational(s.jj))) + r2 * Scalar(QuadNum(to_rational(s.kk)));
}

QuadNum omega_exact(const Quartet& q, const QuadNum& r2) {
  AlternatingSums s = alternating_sums(q);
  return QuadNum(to_rational(s.jj)) + r2 * QuadNum(to_rational(s.kk));
}

double omega_double(const Quartet& q, double r2) {
  AlternatingSums s = alternating_sums(q);
  return static_cast<double>(static_cast<long double>(s.jj) +
                             static_cast<long double>(r2) * static_cast<long double>(s.kk));
}

std::optional<int> classify_quartet(const Quartet& q, const LambdaSet& set) {
  if (!q.closed()) return std::nullopt;
  int d = 0;
  for (const auto& m : q.n) d += set.contains(m) ? 0 : 1;
  return d;
}

std::vector<Quartet> enumerate_A1(const LambdaSet& set) {
  const auto modes = set.modes();
  const std::size_t n = modes.size();
  std::array<std::vector<Quartet>, 4> per_slot;
#pragma omp parallel for schedule(static)
  for (int slot = 0; slot < 4; ++slot) {
    auto& out = per_slot[slot];
    std::array<int, 3> others{};
    for (int i = 0, k = 0; i < 4; ++i)
      if (i != slot) others[k++] = i;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
          Quartet q;
          q.n[others[0]] = modes[a];
          q.n[others[1]] = modes[b];
          q.n[others[2]] = modes[c];
          // solve n1 - n2 + n3 - n4 = 0 for the free slot
          Mode acc{0, 0};
          for (int i : others) acc = (i % 2 == 0) ? acc + q.n[i] : acc - q.n[i];
          q.n[slot] = (slot % 2 == 0) ? -acc : acc;
          if (set.contains(q.n[slot])) continue;
          out.push_back(q.canonical());
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  std::vector<Quartet> all;
  for (auto& v : per_slot) all.insert(all.end(), v.begin(), v.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

ExtremalValue compute_L1(const LambdaSet& set, const Scalar& r2) {
  auto a1 = enumerate_A1(set);
  if (a1.empty()) fail(ErrorKind::domain, "empty-A1: no quartet with exactly one outsider");
  // screen in long double, then decide exactly among near-minimal candidates
  const double r2d = r2.to_double();
  std::vector<double> approx(a1.size());
  double best = INFINITY;
  for (std::size_t i = 0; i < a1.size(); ++i) {
    approx[i] = std::fabs(omega_double(a1[i], r2d));
    best = std::min(best, approx[i]);
  }
  const double cut = best * (1 + 1e-6) + 1e-6;
  std::optional<ExtremalValue> out;
  for (std::size_t i = 0; i < a1.size(); ++i) {
    if (approx[i] > cut) continue;
    Scalar v = omega_r(a1[i], r2).abs();
    if (!out) {
      out = ExtremalValue{v, a1[i]};
      continue;
    }
    auto less = certainly_less(v, out->value);
    if (!less) fail(ErrorKind::precision_exhausted, "cannot order |Omega| values for L1");
    if (*less) out = ExtremalValue{v, a1[i]};
  }
  return *out;
}

U0Result compute_U0(const LambdaSet& set, const Scalar& r2) {
  if (set.families().empty()) fail(ErrorKind::domain, "no-families: Lambda has no (p,q)-family");
  std::set<Quartet> declared;
  for (const auto& f : set.families()) {
    Quartet q = set.family_quartet(f);
    declared.insert(q.canonical());
    declared.insert(q.conjugate().canonical());
  }
  const auto modes = set.modes();
  const i128 p2 = i128(set.p()) * set.p(), q2 = i128(set.q()) * set.q();
  U0Result res;
  res.value = Scalar(QuadNum(0));
  for (const auto& a : modes)
    for (const auto& b : modes) {
      if (a == b) continue;
      for (const auto& c : modes) {
        if (c == b) continue;
        Quartet q{{a, b, c, a - b + c}};
        if (!set.contains(q.n[3])) continue;
        AlternatingSums s = alternating_sums(q);
        if (q2 * s.jj + p2 * s.kk != 0) continue;
        ++res.resonant_quartets;
        if (!declared.count(q.canonical())) res.all_families = false;
        Scalar v = omega_r(q, r2).abs();
        auto less = certainly_less(res.value, v);
        if (!less) {
          // equal or undecidable values: keep the first witness
          if ((res.value - v).sign().value_or(1) != 0)
            fail(ErrorKind::precision_exhausted, "cannot order |Omega| values for U0");
          if (!res.witness) res.witness = q;
          continue;
        }
        if (*less) {
          res.value = v;
          res.witness = q;
        } else if (!res.witness) {
          res.witness = q;
        }
      }
    }
  return res;
}

L1Hypothesis check_L1_hypothesis(const LambdaSet& set, const OmegaSpec& omega) {
  i128 m2 = 0;
  for (const auto& g : set.base().generations())
    for (const auto& m : g) m2 = std::max(m2, m.norm2());
  Rational ratio(set.q() * set.q(), set.p() * set.p());
  Scalar r = Scalar(QuadNum(ratio)) * omega.squared() - Scalar(QuadNum(1));
  RationalInterval iv = r.abs().interval(60);
  L1Hypothesis h;
  h.lhs_upper = 16 * to_rational(m2) * iv.hi;
  h.holds = h.lhs_upper <= 1;
  return h;
}

void write_quartet_csv(std::ostream& out, const std::vector<Quartet>& quartets,
                       const LambdaSet& set, const Scalar& r2) {
  out << "j1,k1,j2,k2,j3,k3,j4,k4,omega_value,class_d\n";
  out.precision(17);
  for (const auto& q : quartets) {
    for (const auto& m : q.n) out << m.j << "," << m.k << ",";
    auto d = classify_quartet(q, set);
    out << omega_r(q, r2).to_double() << "," << (d ? std::to_string(*d) : "rejected") << "\n";
  }
}

}  // namespace nlslab
