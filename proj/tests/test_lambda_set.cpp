#include <doctest.h>

#include "nlslab/error.hpp"
#include "nlslab/lambda_set.hpp"

#include <cstdio>
#include <map>
#include <random>
#include <set>

using namespace nlslab;

namespace {

Quartet qt(Mode a, Mode b, Mode c, Mode d) { return Quartet{{a, b, c, d}}; }

// Second scanner, written without the library's triple loop: walks all
// ordered quadruples of Lambda for linear relations, and every triple plus a
// solved fourth vertex for closure. Resonance is decided in cpp_rational.
struct OracleReport {
  std::set<Quartet> closure, relation, faithfulness;
};

OracleReport naive_scan(const LambdaSet& set, Rational r2) {
  OracleReport rep;
  auto modes = set.modes();
  std::map<Mode, int> gen;
  for (std::size_t g = 0; g < set.generations().size(); ++g)
    for (const auto& m : set.generations()[g]) gen[m] = static_cast<int>(g);
  std::set<std::pair<std::set<Mode>, std::set<Mode>>> fam;
  for (const auto& f : set.families()) {
    std::set<Mode> par{set.at(f.parent1), set.at(f.parent2)};
    std::set<Mode> ch{set.at(f.child1), set.at(f.child2)};
    fam.insert({par, ch});
    fam.insert({ch, par});
  }
  auto omega = [&](const Mode& a, const Mode& b, const Mode& c, const Mode& d) {
    Rational jj = Rational(a.j * a.j - b.j * b.j + c.j * c.j - d.j * d.j);
    Rational kk = Rational(a.k * a.k - b.k * b.k + c.k * c.k - d.k * d.k);
    return Rational(jj + r2 * kk);
  };
  auto collinear = [](const Mode& a, const Mode& b, const Mode& c) {
    return (a.j - b.j) * (c.k - b.k) - (a.k - b.k) * (c.j - b.j) == 0;
  };
  auto is_family = [&](const Mode& a, const Mode& b, const Mode& c, const Mode& d) {
    return fam.count({std::set<Mode>{a, c}, std::set<Mode>{b, d}}) != 0;
  };
  for (const auto& a : modes)
    for (const auto& b : modes)
      for (const auto& c : modes) {
        if (b == a || b == c) continue;
        Mode d{a.j - b.j + c.j, a.k - b.k + c.k};
        bool found = false;
        for (const auto& x : modes) found = found || x == d;
        bool res = omega(a, b, c, d) == 0 && !collinear(a, b, c);
        if (!found) {
          if (res) rep.closure.insert(Quartet{{a, b, c, d}});
          continue;
        }
        bool f = is_family(a, b, c, d);
        if (!f) rep.relation.insert(Quartet{{a, b, c, d}});
        bool pattern = gen[a] == gen[c] && gen[b] == gen[d] && std::abs(gen[a] - gen[b]) == 1;
        if (res && !(f && pattern)) rep.faithfulness.insert(Quartet{{a, b, c, d}});
      }
  // the four-fold loop must see the same relations
  std::set<Quartet> relation4;
  for (const auto& a : modes)
    for (const auto& b : modes)
      for (const auto& c : modes)
        for (const auto& d : modes) {
          if (a - b + c - d != Mode{0, 0} || b == a || b == c) continue;
          if (!is_family(a, b, c, d)) relation4.insert(Quartet{{a, b, c, d}});
        }
  REQUIRE(relation4 == rep.relation);
  return rep;
}

void agree(const LambdaSet& set, std::optional<Rational> r2 = std::nullopt) {
  VerifyOptions opt;
  opt.ratio2 = r2;
  opt.max_witnesses = 1u << 30;
  auto rep = verify_properties(set, opt);
  auto oracle = naive_scan(set, r2 ? *r2 : set.ratio2());
  auto as_set = [](const PropertyCheck& c) {
    return std::set<Quartet>(c.witnesses.begin(), c.witnesses.end());
  };
  CHECK(as_set(rep.closure) == oracle.closure);
  CHECK(as_set(rep.linear_relations) == oracle.relation);
  CHECK(as_set(rep.faithfulness) == oracle.faithfulness);
}

BaseSet with_extra_mode() {
  auto sq = unit_square();
  auto gens = sq.generations();
  gens[1].push_back({2, 1});
  return BaseSet(gens, sq.families());
}

}  // namespace

TEST_CASE("unit square passes every property") {
  for (auto [p, q] : {std::pair{1, 1}, {3, 2}, {7, 5}, {2, 9}}) {
    auto set = scale_set(unit_square(), p, q);
    auto rep = verify_properties(set);
    CHECK(rep.all_passed());
    CHECK(rep.families_found == 1);
    agree(set);
  }
}

TEST_CASE("building N = 2 gives the unit square") {
  auto b = build_base_set(2);
  REQUIRE(b.generations().size() == 2);
  CHECK(std::set<Mode>(b.generations()[0].begin(), b.generations()[0].end()) ==
        std::set<Mode>{{0, 0}, {1, 1}});
  CHECK(std::set<Mode>(b.generations()[1].begin(), b.generations()[1].end()) ==
        std::set<Mode>{{1, 0}, {0, 1}});
}

TEST_CASE("adversarial extra mode is caught with a witness") {
  auto set = scale_set(with_extra_mode(), 1, 1);
  auto rep = verify_properties(set);
  CHECK_FALSE(rep.all_passed());
  CHECK_FALSE(rep.linear_relations.passed);
  const Quartet w = qt({1, 0}, {0, 0}, {1, 1}, {2, 1});
  bool seen = false;
  for (const auto& q : rep.linear_relations.witnesses) seen = seen || q.canonical() == w.canonical();
  CHECK(seen);
  for (const auto& q : rep.linear_relations.witnesses) CHECK(q.closed());
  agree(set);
}

TEST_CASE("odd generation breaks the pairing") {
  auto sq = unit_square();
  auto gens = sq.generations();
  gens[0].push_back({5, 7});
  auto set = scale_set(BaseSet(gens, sq.families()), 1, 1);
  auto rep = verify_properties(set);
  CHECK_FALSE(rep.spouse_children.passed);
}

TEST_CASE("collinear family is rejected") {
  BaseSet b({{{0, 0}, {3, 0}}, {{1, 0}, {2, 0}}},
            {Family{{0, 0}, {1, 0}, {0, 1}, {1, 1}}});
  auto rep = verify_properties(scale_set(b, 1, 1));
  CHECK_FALSE(rep.all_passed());
  CHECK_FALSE(rep.spouse_children.passed);
}

TEST_CASE("base set constructor validates its input") {
  CHECK_THROWS_AS(BaseSet({{{0, 0}, {1, 1}}, {{1, 1}, {0, 1}}}, {}), Error);
  CHECK_THROWS_AS(BaseSet({{{0, 0}, {1, 1}}, {{1, 0}, {0, 2}}},
                          {Family{{0, 0}, {1, 0}, {0, 1}, {1, 1}}}),
                  Error);
  CHECK_THROWS_AS(BaseSet({{{0, 0}, {1, 1}}, {{1, 0}, {0, 1}}},
                          {Family{{0, 0}, {1, 0}, {0, 1}, {2, 1}}}),
                  Error);
}

TEST_CASE("seeded constructions pass and both scanners agree") {
  for (int N = 3; N <= 4; ++N)
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      BuildOptions opt;
      opt.seed = seed;
      auto base = build_base_set(N, opt);
      REQUIRE(base.generations().size() == static_cast<std::size_t>(N));
      for (const auto& g : base.generations()) CHECK(g.size() == (1u << (N - 1)));
      auto set = scale_set(base, 3, 2);
      auto rep = verify_properties(set);
      INFO(rep.summary());
      CHECK(rep.all_passed());
      CHECK(rep.families_found == set.families().size());
      if (N == 3) agree(set);
    }
}

TEST_CASE("construction is deterministic in the seed") {
  BuildOptions opt;
  opt.seed = 11;
  auto a = build_base_set(4, opt);
  auto b = build_base_set(4, opt);
  CHECK(a.generations() == b.generations());
}

TEST_CASE("relations are mutually consistent") {
  auto set = scale_set(build_base_set(4), 1, 1);
  for (const auto& r : set.base().refs()) {
    const auto& rel = set.relations(r);
    if (rel.spouse) {
      CHECK(set.relations(*rel.spouse).spouse == r);
      CHECK(rel.spouse->gen == r.gen);
    }
    if (rel.sibling) CHECK(set.relations(*rel.sibling).sibling == r);
    if (rel.children)
      for (auto c : *rel.children) {
        auto par = set.relations(c).parents;
        REQUIRE(par);
        CHECK(((*par)[0] == r || (*par)[1] == r));
      }
  }
}

TEST_CASE("scaled families are (p,q)-resonant") {
  auto base = build_base_set(4);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(1, 40);
  for (int t = 0; t < 10; ++t) {
    std::int64_t p = d(rng), q = d(rng);
    auto set = scale_set(base, p, q);
    for (const auto& f : set.families()) {
      Quartet fq = set.family_quartet(f);
      CHECK(fq.closed());
      AlternatingSums s = alternating_sums(fq);
      CHECK(s.jj * q * q + s.kk * p * p == 0);
    }
  }
}

TEST_CASE("scaling examples") {
  auto set = scale_set(unit_square(), 3, 2);
  const Family& f = set.families().front();
  Quartet q = set.family_quartet(f);
  CHECK(std::set<Mode>(q.n.begin(), q.n.end()) == std::set<Mode>{{0, 0}, {3, 0}, {3, 2}, {0, 2}});
  auto id = scale_set(unit_square(), 1, 1);
  CHECK(id.generations() == unit_square().generations());
}

TEST_CASE("exchanging p and q destroys resonance of tilted families") {
  auto base = build_base_set(3);
  auto swapped = scale_set(base, 2, 3);
  auto rep = verify_properties(swapped, {20'000'000, Rational(9, 4), 16});
  CHECK_FALSE(rep.all_passed());
}

TEST_CASE("budget is enforced") {
  VerifyOptions opt;
  opt.triple_budget = 10;
  CHECK_THROWS_AS(verify_properties(scale_set(unit_square(), 1, 1), opt), Error);
}

TEST_CASE("generation weights") {
  auto w1 = generation_weights(scale_set(unit_square(), 1, 1), 1.0);
  CHECK(w1[0] == 2);
  CHECK(w1[1] == 2);
  auto w2 = generation_weights(scale_set(unit_square(), 3, 2), 1.0);
  CHECK(w2[0] == 13);
  CHECK(w2[1] == 13);
  auto w3 = generation_weights(scale_set(unit_square(), 3, 2), 2.0);
  CHECK(w3[0] == 169);
  CHECK(w3[1] == 81 + 16);
}

TEST_CASE("radius bracket flags the origin") {
  auto rb = radius_bracket(scale_set(unit_square(), 3, 2));
  CHECK(rb.origin_present);
  CHECK(rb.lo == doctest::Approx(1.0));  // min over (3,0),(0,2),(3,2) of |n|/q
  CHECK(rb.hi == doctest::Approx(std::sqrt(13.0) / 2));
}

TEST_CASE("json round trip") {
  auto set = scale_set(build_base_set(3), 5, 3);
  auto text = to_json(set);
  auto back = lambda_set_from_json(text);
  CHECK(back.p() == 5);
  CHECK(back.q() == 3);
  CHECK(back.generations() == set.generations());
  CHECK(to_json(back) == text);
  CHECK_THROWS_AS(lambda_set_from_json(R"({"N":2,"p":1,"q":1,"bogus":0})"), Error);
  auto path = std::string("lambda_roundtrip_test.json");
  save_lambda_set(set, path);
  CHECK(load_lambda_set(path).generations() == set.generations());
  std::remove(path.c_str());
}
