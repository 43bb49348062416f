#include <doctest.h>

#include "nlslab/diophantine.hpp"
#include "nlslab/error.hpp"

#include <string>

using namespace nlslab;
namespace mp = boost::multiprecision;

namespace {

// Integer (P + sqrt(D)) / Q recurrence, independent of the library's QuadNum path.
std::vector<long long> surd_cf_oracle(long long P, long long Q, long long D, int n) {
  // normalize so that Q divides D - P^2
  if ((D - P * P) % Q != 0) {
    P *= std::abs(Q);
    D *= Q * Q;
    Q *= std::abs(Q);
  }
  long long s = 0;
  while ((s + 1) * (s + 1) <= D) ++s;
  std::vector<long long> out;
  for (int i = 0; i < n; ++i) {
    long long num = Q > 0 ? P + s : P + s + 1;
    long long a = num / Q;
    if ((num % Q != 0) && ((num < 0) != (Q < 0))) --a;
    out.push_back(a);
    P = a * Q - P;
    Q = (D - P * P) / Q;
  }
  return out;
}

std::vector<std::pair<BigInt, BigInt>> recurrence_oracle(const std::vector<BigInt>& a) {
  std::vector<std::pair<BigInt, BigInt>> out;
  BigInt p2 = 0, q2 = 1, p1 = 1, q1 = 0;
  for (const auto& ai : a) {
    BigInt p = ai * p1 + p2, q = ai * q1 + q2;
    out.emplace_back(p, q);
    p2 = p1;
    q2 = q1;
    p1 = p;
    q1 = q;
  }
  return out;
}

std::string liouville_style_digits() {
  // 1 + 10^-2 + 10^-12 + 10^-350, truncated at 400 digits
  std::string frac(400, '0');
  for (int pos : {2, 12, 350}) frac[pos - 1] = '1';
  return "1." + frac;
}

}  // namespace

TEST_CASE("partial quotients of quadratic surds") {
  auto w = OmegaSpec::parse("sqrt:2");
  auto cf = expand_continued_fraction(w, 5);
  std::vector<BigInt> expect{1, 2, 2, 2, 2};
  CHECK(cf.quotients == expect);
  CHECK_FALSE(cf.terminated);

  auto phi = OmegaSpec::parse("surd:1,1,5,2");
  auto o = surd_cf_oracle(1, 2, 5, 25);
  auto got = expand_continued_fraction(phi, 25).quotients;
  for (std::size_t i = 0; i < o.size(); ++i) CHECK(got[i] == o[i]);
  CHECK(got[0] == 1);
  CHECK(got[4] == 1);

  for (long long d : {3, 7, 13, 19, 94}) {
    auto ref = surd_cf_oracle(0, 1, d, 30);
    auto lib = expand_continued_fraction(OmegaSpec::sqrt_of(d), 30).quotients;
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(lib[i] == ref[i]);
  }
  // (3 - sqrt 2)/1 has negative surd coefficient
  auto neg = OmegaSpec::parse("surd:3,-1,2,1");
  auto ref = surd_cf_oracle(-3, -1, 2, 20);
  auto lib = expand_continued_fraction(neg, 20).quotients;
  for (std::size_t i = 0; i < ref.size(); ++i) CHECK(lib[i] == ref[i]);
}

TEST_CASE("rational expansion terminates") {
  auto cf = expand_continued_fraction(OmegaSpec::parse("rat:7/5"), 10);
  std::vector<BigInt> expect{1, 2, 2};
  CHECK(cf.quotients == expect);
  CHECK(cf.terminated);
  auto conv = convergents(OmegaSpec::parse("7/5"), 10);
  REQUIRE(conv.size() == 3);
  CHECK(conv.back().p == 7);
  CHECK(conv.back().q == 5);
  CHECK(conv.back().err_lo == 0);
  CHECK(conv.back().err_hi == 0);
}

TEST_CASE("convergents match the recurrence oracle") {
  auto c = convergents(OmegaSpec::parse("sqrt:2"), 4);
  REQUIRE(c.size() == 4);
  CHECK(c[0].p == 1);
  CHECK(c[0].q == 1);
  CHECK(c[1].p == 3);
  CHECK(c[1].q == 2);
  CHECK(c[2].p == 7);
  CHECK(c[2].q == 5);
  CHECK(c[3].p == 17);
  CHECK(c[3].q == 12);

  auto f = convergents(OmegaSpec::parse("surd:1,1,5,2"), 5);
  BigInt fib[] = {1, 1, 2, 3, 5, 8};
  for (int i = 0; i < 5; ++i) {
    CHECK(f[i].p == fib[i + 1]);
    CHECK(f[i].q == fib[i]);
  }

  auto w = OmegaSpec::parse("sqrt:7");
  auto got = convergents(w, 25);
  auto ref = recurrence_oracle(expand_continued_fraction(w, 25).quotients);
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(got[i].p == ref[i].first);
    CHECK(got[i].q == ref[i].second);
    CHECK(mp::gcd(got[i].p, got[i].q) == 1);
    if (i >= 2) CHECK(got[i].q > got[i - 1].q);
  }
}

TEST_CASE("two-sided error bracket holds exactly") {
  for (const char* spec : {"sqrt:2", "surd:1,1,5,2", "sqrt:3", "sqrt:11", "surd:-1,3,7,2"}) {
    auto w = OmegaSpec::parse(spec);
    auto conv = convergents(w, 20);
    for (std::size_t i = 0; i + 1 < conv.size(); ++i) {
      const auto& c = conv[i];
      REQUIRE(c.q_next.has_value());
      QuadNum err = (w.exact() - QuadNum(Rational(c.p, c.q))).abs();
      Rational lo7(BigInt(1), c.q * (*c.q_next + c.q));
      Rational hi7(BigInt(1), c.q * *c.q_next);
      CHECK(QuadNum(lo7) <= err);
      CHECK(err <= QuadNum(hi7));
      CHECK(QuadNum(c.err_lo) <= err);
      CHECK(err <= QuadNum(c.err_hi));
      CHECK(lo7 <= c.err_lo);
      CHECK(c.err_hi <= hi7);
      // Dirichlet
      CHECK(err <= QuadNum(Rational(BigInt(1), c.q * c.q)));
    }
  }
}

TEST_CASE("decimal input is certified or reports exhaustion") {
  auto w = OmegaSpec::parse("dec:1.41421356237309504880168872420969807856967187537694");
  auto cf = expand_continued_fraction(w, 20);
  for (std::size_t i = 1; i < cf.quotients.size(); ++i) CHECK(cf.quotients[i] == 2);
  auto shortw = OmegaSpec::parse("dec:1.4142");
  CHECK_THROWS_AS(expand_continued_fraction(shortw, 20), Error);
  try {
    expand_continued_fraction(shortw, 20);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::precision_exhausted);
  }
}

TEST_CASE("omega parsing rejects bad input") {
  CHECK_THROWS_AS(OmegaSpec::parse("sqrt:4"), Error);
  CHECK_THROWS_AS(OmegaSpec::parse("rat:1/2"), Error);
  CHECK_THROWS_AS(OmegaSpec::parse("surd:1,1,5,0"), Error);
  CHECK_THROWS_AS(OmegaSpec::parse("foo:3"), Error);
  CHECK(OmegaSpec::parse("sqrt:2").to_string() == "sqrt:2");
  CHECK(OmegaSpec::parse("surd:1,1,5,2").to_string() == "surd:1,1,5,2");
  CHECK(OmegaSpec::parse("rat:14/10").to_string() == "rat:7/5");
}

TEST_CASE("psi values") {
  auto lg = ApproxProfile::log_profile(1);
  CHECK(static_cast<double>(psi_value(lg, 3)) == doctest::Approx(1.0 / (3 * std::log(3.0))));
  CHECK(static_cast<double>(psi_value(lg, 3)) == doctest::Approx(0.30341).epsilon(1e-4));
  CHECK(psi_value(ApproxProfile::power_profile(1, 2), 10) == Real("0.001"));
  CHECK(psi_value(ApproxProfile::power_profile(2, 1), 4) == Real("0.125"));
  CHECK_THROWS_AS(psi_value(lg, 1), Error);
  CHECK_THROWS_AS(psi_value(lg, 0), Error);
  CHECK_THROWS_AS(ApproxProfile::log_profile(Rational(1, 2)), Error);
}

TEST_CASE("q psi(q) is strictly decreasing on a grid") {
  for (const auto& prof : {ApproxProfile::log_profile(1), ApproxProfile::log_profile(3),
                           ApproxProfile::power_profile(1, Rational(1, 2)),
                           ApproxProfile::power_profile(2, 3)}) {
    Real prev = q_psi(prof, 3);
    for (int q = 4; q < 2000; q += 7) {
      Real cur = q_psi(prof, q);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("psi-convergent decisions") {
  auto w = OmegaSpec::parse("sqrt:2");
  auto a = is_psi_convergent(w, 7, 5, ApproxProfile::log_profile(1));
  CHECK(a.holds);
  Real err = mp::sqrt(Real(2)) - Real(7) / 5;
  Real thr = 1 / (25 * mp::log(Real(5)));
  CHECK(static_cast<double>(mp::abs(err)) == doctest::Approx(0.014214).epsilon(1e-4));
  CHECK(static_cast<double>(thr) == doctest::Approx(0.024853).epsilon(1e-4));
  CHECK(mp::abs(a.margin - (thr - mp::abs(err))) < Real("1e-30"));

  auto b = is_psi_convergent(w, 3, 2, ApproxProfile::power_profile(1, 2));
  CHECK_FALSE(b.holds);

  auto r = OmegaSpec::parse("rat:7/5");
  auto c = is_psi_convergent(r, 7, 5, ApproxProfile::log_profile(1));
  CHECK(c.holds);
  CHECK(mp::abs(c.margin - psi_value(ApproxProfile::log_profile(1), 5) / 5) < Real("1e-45"));
}

TEST_CASE("convergent selection") {
  auto w = OmegaSpec::parse("sqrt:2");
  auto lg = ApproxProfile::log_profile(1);
  auto c1 = select_convergent(w, lg, [](const BigInt& q, const Real&) { return q >= 5; });
  CHECK(c1.p == 7);
  CHECK(c1.q == 5);
  Real bound = q_psi(lg, 5);
  auto c2 = select_convergent(w, lg, [&](const BigInt& q, const Real&) {
    return q_psi(lg, q) <= bound;
  });
  CHECK(c2.q == 5);
  auto c3 = select_convergent(w, lg, [&](const BigInt& q, const Real&) { return q >= 5; });
  CHECK(c3.p == c1.p);
  CHECK(c3.q == c1.q);
  CHECK(c3.err_lo == c1.err_lo);
  try {
    select_convergent(w, lg, [](const BigInt&, const Real&) { return false; }, 10);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_found);
  }
}

TEST_CASE("Liouville guard") {
  auto g = liouville_guard(OmegaSpec::parse("sqrt:2"), 10);
  CHECK(g.passed);
  CHECK(g.depth_checked == 10);

  auto lv = OmegaSpec::parse("dec:" + liouville_style_digits());
  auto h = liouville_guard(lv, 4);
  CHECK_FALSE(h.passed);
  REQUIRE(h.witness.has_value());
  CHECK(h.witness->p == 101);
  CHECK(h.witness->q == 100);

  CHECK_THROWS_AS(liouville_guard(OmegaSpec::parse("rat:3/2"), 4), Error);
}
