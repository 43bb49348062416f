#include <doctest.h>

#include "nlslab/error.hpp"
#include "nlslab/resonance.hpp"

#include <random>
#include <set>
#include <sstream>

using namespace nlslab;

namespace {

Quartet qt(Mode a, Mode b, Mode c, Mode d) { return Quartet{{a, b, c, d}}; }

Scalar rat(std::int64_t a, std::int64_t b = 1) { return Scalar(QuadNum(Rational(a, b))); }

// Canonical form computed independently of Quartet::canonical.
Quartet canon(Quartet q) {
  if (q.n[2] < q.n[0]) std::swap(q.n[0], q.n[2]);
  if (q.n[3] < q.n[1]) std::swap(q.n[1], q.n[3]);
  return q;
}

// A(1) by exhaustion: three slots from Lambda, the fourth ranging over a box
// large enough to hold every solution, momentum tested rather than solved.
std::set<Quartet> brute_A1_canonical(const LambdaSet& set) {
  auto modes = set.modes();
  std::int64_t m = 0;
  for (const auto& x : modes) m = std::max({m, std::abs(x.j), std::abs(x.k)});
  std::set<Quartet> out;
  std::vector<Mode> box;
  for (std::int64_t j = -3 * m; j <= 3 * m; ++j)
    for (std::int64_t k = -3 * m; k <= 3 * m; ++k)
      if (!set.contains({j, k})) box.push_back({j, k});
  for (int slot = 0; slot < 4; ++slot)
    for (const auto& a : modes)
      for (const auto& b : modes)
        for (const auto& c : modes)
          for (const auto& x : box) {
            std::array<Mode, 3> in{a, b, c};
            Quartet q;
            for (int i = 0, t = 0; i < 4; ++i) q.n[i] = i == slot ? x : in[t++];
            if (q.closed()) out.insert(canon(q));
          }
  return out;
}

bool at_least(const Scalar& a, const Scalar& b) {
  auto l = certainly_less(a, b);
  return l && !*l;
}

LambdaSet from_modes(std::vector<Mode> ms) { return scale_set(BaseSet({ms}, {}), 1, 1); }

}  // namespace

TEST_CASE("omega examples") {
  CHECK(omega_r(qt({0, 0}, {1, 0}, {1, 2}, {0, 2}), rat(7, 3)).exact() == QuadNum(0));
  CHECK(omega_r(qt({0, 0}, {1, 1}, {2, 0}, {1, -1}), rat(2)).exact() == QuadNum(-2));
  Mode n{4, -9};
  CHECK(omega_r(Quartet{{n, n, n, n}}, Scalar(QuadNum(0, 1, 2))).exact() == QuadNum(0));
  CHECK(omega_double(qt({0, 0}, {1, 1}, {2, 0}, {1, -1}), 2.0) == -2.0);
}

TEST_CASE("omega symmetries, rectangle identity and scaling covariance") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> c(-50, 50), pq(1, 60);
  for (int trial = 0; trial < 10; ++trial) {
    std::int64_t p = pq(rng), q = pq(rng);
    Scalar r2 = rat(p * p, q * q);
    QuadNum p2(Rational(p * p));
    for (int i = 0; i < 10000; ++i) {
      Mode a{c(rng), c(rng)}, b{c(rng), c(rng)}, d{c(rng), c(rng)};
      Quartet t{{a, b, d, a - b + d}};
      Quartet bt;
      for (int s = 0; s < 4; ++s) bt.n[s] = {p * t.n[s].j, q * t.n[s].k};
      CHECK_EQ(omega_r(bt, r2).exact(), p2 * omega_r(t, rat(1)).exact());
      if (i % 10 == 0) {
        i128 rect = 2 * dot(t.n[0] - t.n[1], t.n[1] - t.n[2]);
        CHECK(omega_r(t, rat(1)).exact() == QuadNum(Rational(BigInt(to_string(rect)))));
        Quartet s13{{t.n[2], t.n[1], t.n[0], t.n[3]}};
        CHECK(omega_r(s13, r2).exact() == omega_r(t, r2).exact());
        CHECK(omega_r(t.conjugate(), r2).exact() == -omega_r(t, r2).exact());
      }
    }
  }
}

TEST_CASE("classification") {
  auto set = scale_set(unit_square(), 1, 1);
  CHECK(classify_quartet(qt({0, 0}, {1, 0}, {1, 1}, {0, 1}), set) == 0);
  CHECK(classify_quartet(qt({0, 0}, {1, 0}, {2, 1}, {1, 1}), set) == 1);
  CHECK(classify_quartet(qt({0, 0}, {3, 0}, {3, 1}, {0, 1}), set) == 2);
  CHECK(classify_quartet(qt({0, 0}, {1, 0}, {1, 1}, {1, 1}), set) == std::nullopt);
}

TEST_CASE("A(1) agrees with brute force") {
  for (auto [p, q] : {std::pair{1, 1}, {3, 2}}) {
    auto set = scale_set(unit_square(), p, q);
    auto a1 = enumerate_A1(set);
    auto brute = brute_A1_canonical(set);
    CHECK(std::set<Quartet>(a1.begin(), a1.end()) == brute);
    CHECK(std::is_sorted(a1.begin(), a1.end()));
    for (const auto& x : a1) CHECK(classify_quartet(x, set) == 1);
  }
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> c(-8, 8), sz(1, 8);
  for (int t = 0; t < 12; ++t) {
    std::set<Mode> ms;
    int n = sz(rng);
    while (static_cast<int>(ms.size()) < n) ms.insert({c(rng), c(rng)});
    auto set = from_modes({ms.begin(), ms.end()});
    auto a1 = enumerate_A1(set);
    CHECK(std::set<Quartet>(a1.begin(), a1.end()) == brute_A1_canonical(set));
  }
}

TEST_CASE("degenerate A(1) cases") {
  CHECK(enumerate_A1(from_modes({{3, 4}})).empty());
  CHECK(enumerate_A1(scale_set(BaseSet({}, {}), 1, 1)).empty());
  CHECK_THROWS_AS(compute_L1(from_modes({{3, 4}}), rat(2)), Error);
}

TEST_CASE("closure makes Omega_1 a nonzero integer on A(1)") {
  for (int N = 2; N <= 4; ++N) {
    auto set = scale_set(build_base_set(N), 1, 1);
    for (const auto& q : enumerate_A1(set)) {
      auto s = alternating_sums(q);
      CHECK(s.jj + s.kk != 0);
    }
  }
}

TEST_CASE("L1 on the scaled unit square") {
  auto set = scale_set(unit_square(), 3, 2);
  auto l = compute_L1(set, rat(9, 4));
  QuadNum v = l.value.exact();
  REQUIRE(v.surd_coeff() == 0);
  Rational r = v.rational_part();
  CHECK(r > 0);
  CHECK(4 % boost::multiprecision::denominator(r) == 0);
  // independent minimum over the brute-force set
  Rational best = -1;
  for (const auto& q : brute_A1_canonical(set)) {
    auto s = alternating_sums(q);
    Rational o = abs(Rational(BigInt(to_string(s.jj))) + Rational(9, 4) * Rational(BigInt(to_string(s.kk))));
    if (best < 0 || o < best) best = o;
  }
  CHECK(r == best);
}

TEST_CASE("lower bound on |Omega_omega| over A(1) under the smallness hypothesis") {
  auto omega = OmegaSpec::sqrt_of(2);
  // unit square with the convergent 7/5; 3/2 is too coarse
  auto sq75 = scale_set(unit_square(), 7, 5);
  CHECK(check_L1_hypothesis(sq75, omega).holds);
  CHECK_FALSE(check_L1_hypothesis(scale_set(unit_square(), 3, 2), omega).holds);
  auto l = compute_L1(sq75, omega.as_scalar() * omega.as_scalar());
  CHECK(at_least(l.value, rat(49, 2)));
  // the hypothesis is sufficient only: 3/2 still clears p^2/2
  CHECK(at_least(compute_L1(scale_set(unit_square(), 3, 2), omega.squared()).value, rat(9, 2)));

  auto base = build_base_set(3);
  std::int64_t m2 = 0;
  for (const auto& g : base.generations())
    for (const auto& x : g) m2 = std::max<std::int64_t>(m2, static_cast<std::int64_t>(x.norm2()));
  // first convergent with p^2 >= 16 max|n|^2
  auto c = select_convergent(omega, ApproxProfile::log_profile(10),
                             [&](const BigInt& q, const Real&) {
                               return 2 * q * q - 1 >= 16 * BigInt(m2);
                             });
  auto set = scale_set(base, static_cast<std::int64_t>(c.p), static_cast<std::int64_t>(c.q));
  REQUIRE(check_L1_hypothesis(set, omega).holds);
  Scalar r2(omega.squared());
  auto bound = rat(static_cast<std::int64_t>(c.p * c.p), 2);
  for (const auto& q : enumerate_A1(set)) CHECK(at_least(omega_r(q, r2).abs(), bound));
}

TEST_CASE("U0") {
  auto sq = scale_set(unit_square(), 3, 2);
  CHECK(compute_U0(sq, rat(9, 4)).value.exact() == QuadNum(0));
  auto u = compute_U0(sq, Scalar(QuadNum(2)));
  CHECK(u.value.exact() == QuadNum(0));
  CHECK(u.all_families);

  auto set = scale_set(build_base_set(3), 3, 2);
  auto w = compute_U0(set, Scalar(QuadNum(2)));
  CHECK(w.all_families);
  QuadNum best(0);
  for (const auto& f : set.families()) {
    auto s = alternating_sums(set.family_quartet(f));
    QuadNum o = QuadNum(Rational(2) - Rational(9, 4)) * QuadNum(Rational(BigInt(to_string(s.kk))));
    if (best < o.abs()) best = o.abs();
  }
  CHECK(w.value.exact() == best);
  CHECK(w.resonant_quartets == 8 * set.families().size());
  CHECK_THROWS_AS(compute_U0(from_modes({{1, 1}, {2, 3}}), rat(2)), Error);
}

TEST_CASE("csv export") {
  auto set = scale_set(unit_square(), 1, 1);
  std::ostringstream os;
  std::vector<Quartet> qs{qt({0, 0}, {1, 0}, {2, 1}, {1, 1}), qt({0, 0}, {1, 0}, {0, 0}, {0, 0})};
  write_quartet_csv(os, qs, set, rat(2));
  CHECK(os.str() ==
        "j1,k1,j2,k2,j3,k3,j4,k4,omega_value,class_d\n"
        "0,0,1,0,2,1,1,1,2,1\n"
        "0,0,1,0,0,0,0,0,-1,rejected\n");
}
