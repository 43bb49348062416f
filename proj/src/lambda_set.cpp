#include "nlslab/lambda_set.hpp"

#include "nlslab/error.hpp"

#include <json.hpp>

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

namespace nlslab {

namespace {

void set_once(std::optional<ModeRef>& slot, ModeRef v, const char* what) {
  if (slot && *slot != v) fail(ErrorKind::config, std::string("conflicting ") + what + " relation");
  slot = v;
}

void set_once(std::optional<std::array<ModeRef, 2>>& slot, ModeRef a, ModeRef b,
              const char* what) {
  std::array<ModeRef, 2> v = a < b ? std::array<ModeRef, 2>{a, b} : std::array<ModeRef, 2>{b, a};
  if (slot && *slot != v) fail(ErrorKind::config, std::string("conflicting ") + what + " relation");
  slot = v;
}

i128 cross(Mode a, Mode b) { return i128(a.j) * b.k - i128(a.k) * b.j; }

}  // namespace

// --- BaseSet -----------------------------------------------------------------

BaseSet::BaseSet(std::vector<std::vector<Mode>> generations, std::vector<Family> families)
    : gens_(std::move(generations)), families_(std::move(families)) {
  rel_.resize(gens_.size());
  for (std::size_t g = 0; g < gens_.size(); ++g) {
    rel_[g].resize(gens_[g].size());
    for (std::size_t i = 0; i < gens_[g].size(); ++i) {
      ModeRef r{static_cast<int>(g), static_cast<int>(i)};
      if (!index_.emplace(gens_[g][i], r).second)
        fail(ErrorKind::config, "mode " + gens_[g][i].to_string() + " appears twice");
    }
  }
  auto valid = [&](ModeRef r) {
    return r.gen >= 0 && r.gen < static_cast<int>(gens_.size()) && r.idx >= 0 &&
           r.idx < static_cast<int>(gens_[r.gen].size());
  };
  for (const auto& f : families_) {
    if (!valid(f.parent1) || !valid(f.parent2) || !valid(f.child1) || !valid(f.child2))
      fail(ErrorKind::config, "family references a missing mode");
    if (f.parent1.gen != f.parent2.gen || f.child1.gen != f.child2.gen ||
        f.child1.gen != f.parent1.gen + 1)
      fail(ErrorKind::config, "family generations must be (g, g+1, g, g+1)");
    Quartet q{{at(f.parent1), at(f.child1), at(f.parent2), at(f.child2)}};
    if (!q.closed()) fail(ErrorKind::config, "family " + q.to_string() + " is not momentum-closed");
    auto& r1 = rel_[f.parent1.gen][f.parent1.idx];
    auto& r2 = rel_[f.parent2.gen][f.parent2.idx];
    auto& c1 = rel_[f.child1.gen][f.child1.idx];
    auto& c2 = rel_[f.child2.gen][f.child2.idx];
    set_once(r1.spouse, f.parent2, "spouse");
    set_once(r2.spouse, f.parent1, "spouse");
    set_once(r1.children, f.child1, f.child2, "children");
    set_once(r2.children, f.child1, f.child2, "children");
    set_once(c1.sibling, f.child2, "sibling");
    set_once(c2.sibling, f.child1, "sibling");
    set_once(c1.parents, f.parent1, f.parent2, "parents");
    set_once(c2.parents, f.parent1, f.parent2, "parents");
  }
}

std::optional<ModeRef> BaseSet::find(const Mode& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<ModeRef> BaseSet::refs() const {
  std::vector<ModeRef> out;
  for (std::size_t g = 0; g < gens_.size(); ++g)
    for (std::size_t i = 0; i < gens_[g].size(); ++i)
      out.push_back({static_cast<int>(g), static_cast<int>(i)});
  return out;
}

std::int64_t BaseSet::max_abs_coordinate() const {
  std::int64_t m = 0;
  for (const auto& g : gens_)
    for (const auto& n : g) m = std::max({m, std::abs(n.j), std::abs(n.k)});
  return m;
}

// --- LambdaSet ---------------------------------------------------------------

LambdaSet::LambdaSet(BaseSet base, std::int64_t p, std::int64_t q)
    : base_(std::move(base)), p_(p), q_(q) {
  if (p < 1 || q < 1) fail(ErrorKind::config, "scaling (p, q) must be positive");
  gens_.resize(base_.num_generations());
  for (std::size_t g = 0; g < gens_.size(); ++g) {
    for (std::size_t i = 0; i < base_.generations()[g].size(); ++i) {
      const Mode& m = base_.generations()[g][i];
      Mode s{m.j * p, m.k * q};
      gens_[g].push_back(s);
      index_.emplace(s, ModeRef{static_cast<int>(g), static_cast<int>(i)});
    }
  }
}

std::optional<ModeRef> LambdaSet::find(const Mode& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Mode> LambdaSet::modes() const {
  std::vector<Mode> out;
  for (const auto& g : gens_) out.insert(out.end(), g.begin(), g.end());
  return out;
}

Quartet LambdaSet::family_quartet(const Family& f) const {
  return {{at(f.parent1), at(f.child1), at(f.parent2), at(f.child2)}};
}

LambdaSet scale_set(const BaseSet& base, std::int64_t p, std::int64_t q) {
  return LambdaSet(base, p, q);
}

BaseSet unit_square() {
  return BaseSet({{{0, 0}, {1, 1}}, {{1, 0}, {0, 1}}}, {Family{{0, 0}, {1, 0}, {0, 1}, {1, 1}}});
}

// --- construction --------------------------------------------------------------

namespace {

using PairKey = std::pair<Mode, Mode>;

PairKey ordered(Mode a, Mode b) { return a < b ? PairKey{a, b} : PairKey{b, a}; }

/// Incremental point set with pair-sum index and undo.
class Placement {
 public:
  bool has(const Mode& m) const { return pts_.count(m) != 0; }
  const std::vector<Mode>& points() const { return order_; }

  void add(Mode x) {
    for (const auto& y : order_) sums_[x + y].push_back(ordered(x, y));
    sums_[x + x].push_back({x, x});
    pts_.insert(x);
    order_.push_back(x);
  }

  void remove_last() {
    Mode x = order_.back();
    order_.pop_back();
    pts_.erase(x);
    auto drop = [&](const Mode& key) {
      auto it = sums_.find(key);
      it->second.pop_back();
      if (it->second.empty()) sums_.erase(it);
    };
    drop(x + x);
    for (const auto& y : order_) drop(x + y);
  }

  void declare_family(Mode p1, Mode p2, Mode c1, Mode c2) {
    families_[p1 + p2] = {ordered(p1, p2), ordered(c1, c2)};
  }
  void undeclare_family(Mode p1, Mode p2) { families_.erase(p1 + p2); }

  /// Every pair-sum collision involving x must be a declared family.
  bool relations_ok(const Mode& x) const {
    auto ok_key = [&](const Mode& key) {
      auto it = sums_.find(key);
      if (it == sums_.end() || it->second.size() <= 1) return true;
      if (it->second.size() > 2) return false;
      auto f = families_.find(key);
      if (f == families_.end()) return false;
      const auto& v = it->second;
      return (v[0] == f->second.first && v[1] == f->second.second) ||
             (v[1] == f->second.first && v[0] == f->second.second);
    };
    if (!ok_key(x + x)) return false;
    for (const auto& y : order_)
      if (!ok_key(x + y)) return false;
    return true;
  }

  /// Every right angle with a vertex at x has its rectangle completed.
  bool right_angles_ok(const Mode& x) const {
    const auto& s = order_;
    for (std::size_t a = 0; a < s.size(); ++a) {
      if (s[a] == x) continue;
      Mode da = s[a] - x;
      for (std::size_t c = a + 1; c < s.size(); ++c) {
        if (s[c] == x) continue;
        if (dot(da, s[c] - x) == 0 && !has(s[a] - x + s[c])) return false;
      }
    }
    for (const auto& b : s) {
      if (b == x) continue;
      Mode d = x - b;
      for (const auto& c : s) {
        if (c == b || c == x) continue;
        if (dot(d, c - b) == 0 && !has(x - b + c)) return false;
      }
    }
    return true;
  }

 private:
  std::unordered_set<Mode, ModeHash> pts_;
  std::vector<Mode> order_;
  std::unordered_map<Mode, std::vector<PairKey>, ModeHash> sums_;
  std::unordered_map<Mode, std::pair<PairKey, PairKey>, ModeHash> families_;
};

std::int64_t isqrt64(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// Lattice vectors u with |u| = |v|, u = v mod 2, u != +-v, sorted by angle from v.
std::vector<Mode> circle_candidates(Mode v) {
  std::int64_t n = static_cast<std::int64_t>(v.norm2());
  std::int64_t r = isqrt64(n);
  std::vector<Mode> out;
  for (std::int64_t x = -r; x <= r; ++x) {
    std::int64_t rem = n - x * x;
    std::int64_t y = isqrt64(rem);
    if (y * y != rem) continue;
    for (std::int64_t yy : {y, -y}) {
      if (yy == -y && y == 0) continue;
      Mode u{x, yy};
      if (u == v || u == -v) continue;
      if (((u.j - v.j) & 1) != 0 || ((u.k - v.k) & 1) != 0) continue;
      out.push_back(u);
    }
  }
  auto angle = [&](Mode u) {
    double a = std::atan2(static_cast<double>(cross(v, u)), static_cast<double>(dot(v, u)));
    return a < 0 ? a + 2 * M_PI : a;
  };
  std::stable_sort(out.begin(), out.end(),
                   [&](Mode a, Mode b) { return angle(a) < angle(b); });
  return out;
}

struct HypercubeBuilder {
  int N;
  int width;  // 2^(N-1)
  std::vector<std::vector<Mode>> gens;
  Placement place;
  std::size_t nodes = 0;
  std::size_t budget;

  HypercubeBuilder(int n, std::size_t b) : N(n), width(1 << (n - 1)), budget(b) {}

  bool accept(const std::vector<Mode>& fresh) {
    for (const auto& x : fresh)
      if (!place.relations_ok(x)) return false;
    for (const auto& x : fresh)
      if (!place.right_angles_ok(x)) return false;
    return true;
  }

  void rebuild(int upto_gen) {
    place = Placement{};
    for (int g = 0; g <= upto_gen; ++g)
      for (const auto& m : gens[g]) place.add(m);
    for (int g = 0; g < upto_gen; ++g) {
      int bit = 1 << g;
      for (int b = 0; b < width; ++b) {
        if (b & bit) continue;
        place.declare_family(gens[g][b], gens[g][b ^ bit], gens[g + 1][b], gens[g + 1][b ^ bit]);
      }
    }
  }

  void first_generation(std::mt19937_64& rng, std::int64_t box) {
    gens.assign(N, {});
    gens[0].assign(width, Mode{});
    gens[0][0] = {0, 0};
    if (width > 1) gens[0][1] = {1, 1};
    place = Placement{};
    place.add(gens[0][0]);
    if (width > 1) place.add(gens[0][1]);
    std::uniform_int_distribution<std::int64_t> coord(-box, box);
    for (int b = 2; b < width; ++b) {
      bool placed = false;
      for (int attempt = 0; attempt < 100000 && !placed; ++attempt) {
        Mode x{coord(rng), coord(rng)};
        if (place.has(x)) continue;
        place.add(x);
        if (accept({x})) {
          gens[0][b] = x;
          placed = true;
        } else {
          place.remove_last();
        }
      }
      if (!placed) fail(ErrorKind::search_exhausted, "could not place first generation");
    }
  }

  // Depth-first placement of all children pairs of generation g.
  bool place_children(int g, std::size_t generation_budget) {
    const std::size_t start = nodes;
    int bit = 1 << g;
    std::vector<int> pairs;
    for (int b = 0; b < width; ++b)
      if (!(b & bit)) pairs.push_back(b);
    std::vector<std::vector<Mode>> cand(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k)
      cand[k] = circle_candidates(gens[g][pairs[k] ^ bit] - gens[g][pairs[k]]);
    gens[g + 1].assign(width, Mode{});
    std::vector<std::size_t> ci(pairs.size() + 1, 0);
    std::size_t k = 0;
    auto undo = [&](std::size_t level) {
      int b = pairs[level];
      place.undeclare_family(gens[g][b], gens[g][b ^ bit]);
      place.remove_last();
      place.remove_last();
    };
    while (k < pairs.size()) {
      if (ci[k] >= cand[k].size()) {
        if (k == 0) return false;
        --k;
        undo(k);
        ++ci[k];
        continue;
      }
      if (++nodes > budget) fail(ErrorKind::search_exhausted, "node budget exhausted");
      if (nodes - start > generation_budget) return false;
      int b = pairs[k];
      Mode p1 = gens[g][b], p2 = gens[g][b ^ bit];
      Mode u = cand[k][ci[k]];
      Mode m2 = p1 + p2;
      Mode c1{(m2.j - u.j) / 2, (m2.k - u.k) / 2};
      Mode c2{(m2.j + u.j) / 2, (m2.k + u.k) / 2};
      if (place.has(c1) || place.has(c2)) {
        ++ci[k];
        continue;
      }
      place.add(c1);
      place.add(c2);
      place.declare_family(p1, p2, c1, c2);
      if (accept({c1, c2})) {
        gens[g + 1][b] = c1;
        gens[g + 1][b ^ bit] = c2;
        ++k;
        ci[k] = 0;
      } else {
        undo(k);
        ++ci[k];
      }
    }
    return true;
  }

  void dilate(std::int64_t f, int upto_gen) {
    for (int g = 0; g <= upto_gen; ++g)
      for (auto& m : gens[g]) m = {m.j * f, m.k * f};
    rebuild(upto_gen);
  }
};

}  // namespace

BaseSet build_base_set(int N, const BuildOptions& options) {
  if (N < 2) fail(ErrorKind::config, "N must be >= 2");
  if (N > 8) fail(ErrorKind::config, "N > 8 is outside the supported construction range");
  std::mt19937_64 rng(options.seed);
  std::int64_t box = options.box > 0 ? options.box : std::int64_t(4) << (N - 1);
  HypercubeBuilder hb(N, options.node_budget);
  hb.first_generation(rng, box);
  for (int g = 0; g + 1 < N; ++g) {
    std::size_t next_dilation = 0;
    while (!hb.place_children(g, options.generation_budget)) {
      if (next_dilation >= options.dilations.size())
        fail(ErrorKind::search_exhausted,
             "no placement for generation " + std::to_string(g + 2) + " after all dilations");
      hb.dilate(options.dilations[next_dilation++], g);
    }
  }
  std::vector<Family> fam;
  for (int g = 0; g + 1 < N; ++g) {
    int bit = 1 << g;
    for (int b = 0; b < hb.width; ++b) {
      if (b & bit) continue;
      fam.push_back(Family{{g, b}, {g + 1, b}, {g, b ^ bit}, {g + 1, b ^ bit}});
    }
  }
  return BaseSet(hb.gens, fam);
}

// --- verification ----------------------------------------------------------------

bool PropertyReport::all_passed() const {
  for (const auto* c : checks())
    if (!c->passed) return false;
  return true;
}

std::vector<const PropertyCheck*> PropertyReport::checks() const {
  return {&closure, &spouse_children, &parents_sibling, &nondegeneracy, &faithfulness,
          &linear_relations};
}

std::string PropertyReport::summary() const {
  std::ostringstream os;
  for (const auto* c : checks()) {
    os << c->name << ": " << (c->passed ? "pass" : "FAIL");
    if (!c->witnesses.empty()) os << " witness " << c->witnesses.front().to_string();
    if (!c->notes.empty()) os << " (" << c->notes.front() << ")";
    os << "\n";
  }
  os << "triples scanned: " << triples_scanned << ", families found: " << families_found << "\n";
  return os.str();
}

namespace {

enum class Violation { closure, faithfulness, relation };

struct Hit {
  Violation kind;
  Quartet q;
  friend bool operator<(const Hit& a, const Hit& b) {
    return std::tie(a.kind, a.q) < std::tie(b.kind, b.q);
  }
};

using FamilyKey = std::pair<PairKey, PairKey>;  // (parents, children)

}  // namespace

PropertyReport verify_properties(const LambdaSet& set, const VerifyOptions& options) {
  PropertyReport rep;
  rep.budget = options.triple_budget;
  const auto modes = set.modes();
  const std::size_t n = modes.size();
  if (n * n * n > options.triple_budget)
    fail(ErrorKind::budget_exceeded, "exhaustive scan needs " + std::to_string(n * n * n) +
                                         " triples, budget " +
                                         std::to_string(options.triple_budget));
  rep.triples_scanned = n * n * n;

  Rational r2 = options.ratio2 ? *options.ratio2 : set.ratio2();
  // Omega_r = 0  <=>  den * jj + num * kk = 0
  const BigInt r_num = boost::multiprecision::numerator(r2);
  const BigInt r_den = boost::multiprecision::denominator(r2);
  auto resonant = [&](const Quartet& q) {
    AlternatingSums s = alternating_sums(q);
    if (s.jj == 0 && s.kk == 0) return true;
    BigInt jj(to_string(s.jj)), kk(to_string(s.kk));
    return r_den * jj + r_num * kk == 0;
  };

  std::set<Quartet> declared;  // canonical quartets of declared families, both orientations
  for (const auto& f : set.families()) {
    Quartet q = set.family_quartet(f);
    declared.insert(q.canonical());
    declared.insert(Quartet{{q.n[1], q.n[0], q.n[3], q.n[2]}}.canonical());
  }
  auto gen_of = [&](const Mode& m) { return set.find(m)->gen; };

  std::vector<std::vector<Hit>> hits(omp_get_max_threads());
  std::vector<std::set<FamilyKey>> found(omp_get_max_threads());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::size_t a = 0; a < n; ++a) {
    int tid = omp_get_thread_num();
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == b) continue;
        Quartet q{{modes[a], modes[b], modes[c], modes[a] - modes[b] + modes[c]}};
        bool degenerate = cross(q.n[0] - q.n[1], q.n[2] - q.n[1]) == 0;
        bool res = resonant(q);
        if (!set.contains(q.n[3])) {
          if (res && !degenerate) hits[tid].push_back({Violation::closure, q});
          continue;
        }
        bool is_family = declared.count(q.canonical()) != 0;
        if (!is_family) hits[tid].push_back({Violation::relation, q});
        if (res && !degenerate) {
          int g1 = gen_of(q.n[0]), g2 = gen_of(q.n[1]), g3 = gen_of(q.n[2]), g4 = gen_of(q.n[3]);
          bool pattern = g1 == g3 && g2 == g4 && g2 == g1 + 1;
          if (!is_family || !(pattern || (g1 == g3 && g2 == g4 && g1 == g2 + 1)))
            hits[tid].push_back({Violation::faithfulness, q});
          if (pattern && q.n[0] != q.n[2] && q.n[1] != q.n[3])
            found[tid].insert({ordered(q.n[0], q.n[2]), ordered(q.n[1], q.n[3])});
        }
      }
    }
  }
  std::vector<Hit> all;
  for (auto& h : hits) all.insert(all.end(), h.begin(), h.end());
  std::sort(all.begin(), all.end());
  std::set<FamilyKey> families;
  for (auto& f : found) families.insert(f.begin(), f.end());
  rep.families_found = families.size();

  auto record = [&](PropertyCheck& chk, const Quartet& q) {
    chk.passed = false;
    if (chk.witnesses.size() < options.max_witnesses) chk.witnesses.push_back(q);
  };
  for (const auto& h : all) {
    switch (h.kind) {
      case Violation::closure: record(rep.closure, h.q); break;
      case Violation::faithfulness: record(rep.faithfulness, h.q); break;
      case Violation::relation: record(rep.linear_relations, h.q); break;
    }
  }

  // P2 / P3: geometric families versus declared relations.
  std::map<Mode, std::vector<FamilyKey>> as_parent, as_child;
  for (const auto& f : families) {
    as_parent[f.first.first].push_back(f);
    as_parent[f.first.second].push_back(f);
    as_child[f.second.first].push_back(f);
    as_child[f.second.second].push_back(f);
  }
  auto note = [&](PropertyCheck& chk, const std::string& msg) {
    chk.passed = false;
    if (chk.notes.size() < options.max_witnesses) chk.notes.push_back(msg);
  };
  const int N = static_cast<int>(set.num_generations());
  for (const auto& r : set.base().refs()) {
    const Mode& m = set.at(r);
    const Relations& rel = set.relations(r);
    if (r.gen + 1 < N) {
      const auto& fs = as_parent[m];
      if (fs.size() != 1) {
        note(rep.spouse_children, m.to_string() + " is a parent in " + std::to_string(fs.size()) +
                                      " nuclear families");
      } else {
        const auto& f = fs.front();
        Mode spouse = f.first.first == m ? f.first.second : f.first.first;
        bool match = rel.spouse && rel.children && set.at(*rel.spouse) == spouse &&
                     ordered(set.at((*rel.children)[0]), set.at((*rel.children)[1])) == f.second;
        if (!match) note(rep.spouse_children, m.to_string() + " declared relations disagree");
        if (gen_of(spouse) != r.gen)
          note(rep.spouse_children, m.to_string() + " spouse outside its generation");
      }
    }
    if (r.gen > 0) {
      const auto& fs = as_child[m];
      if (fs.size() != 1) {
        note(rep.parents_sibling, m.to_string() + " is a child in " + std::to_string(fs.size()) +
                                      " nuclear families");
      } else {
        const auto& f = fs.front();
        Mode sibling = f.second.first == m ? f.second.second : f.second.first;
        bool match = rel.sibling && rel.parents && set.at(*rel.sibling) == sibling &&
                     ordered(set.at((*rel.parents)[0]), set.at((*rel.parents)[1])) == f.first;
        if (!match) note(rep.parents_sibling, m.to_string() + " declared relations disagree");
      }
    }
    if (rel.sibling && rel.spouse && *rel.sibling == *rel.spouse)
      note(rep.nondegeneracy, m.to_string() + " has sibling equal to spouse");
  }
  return rep;
}

// --- weights and radii -----------------------------------------------------------

std::vector<Real> generation_weights(const LambdaSet& set, double s) {
  std::vector<Real> out;
  Real rs(s);
  for (const auto& g : set.generations()) {
    Real acc = 0;
    for (const auto& m : g) {
      Real r2(to_string(m.norm2()));
      if (r2 > 0) acc += boost::multiprecision::pow(r2, rs);
    }
    out.push_back(acc);
  }
  return out;
}

RadiusBracket radius_bracket(const LambdaSet& set) {
  RadiusBracket rb;
  bool any = false;
  for (const auto& m : set.modes()) {
    if (m == Mode{0, 0}) {
      rb.origin_present = true;
      continue;
    }
    double r = m.length() / static_cast<double>(set.q());
    if (!any) {
      rb.lo = rb.hi = r;
      any = true;
    }
    rb.lo = std::min(rb.lo, r);
    rb.hi = std::max(rb.hi, r);
  }
  return rb;
}

// --- JSON ----------------------------------------------------------------------

std::string to_json(const LambdaSet& set) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["N"] = set.num_generations();
  j["p"] = set.p();
  j["q"] = set.q();
  ordered_json gens = ordered_json::array();
  for (const auto& g : set.base().generations()) {
    ordered_json arr = ordered_json::array();
    for (const auto& m : g) arr.push_back({m.j, m.k});
    gens.push_back(arr);
  }
  j["generations"] = gens;
  ordered_json fams = ordered_json::array();
  for (const auto& f : set.families()) {
    ordered_json e = ordered_json::array();
    for (const auto& r : {f.parent1, f.child1, f.parent2, f.child2}) e.push_back({r.gen, r.idx});
    fams.push_back(e);
  }
  j["relations"]["families"] = fams;
  return j.dump(2);
}

LambdaSet lambda_set_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::config, std::string("invalid lambda-set JSON: ") + e.what());
  }
  try {
    for (const auto& [key, value] : j.items()) {
      (void)value;
      if (key != "N" && key != "p" && key != "q" && key != "generations" && key != "relations" &&
          key != "meta" && key != "config_hash")
        fail(ErrorKind::config, "unknown lambda-set key '" + key + "'");
    }
    std::vector<std::vector<Mode>> gens;
    for (const auto& g : j.at("generations")) {
      std::vector<Mode> gm;
      for (const auto& m : g) gm.push_back({m.at(0).get<std::int64_t>(), m.at(1).get<std::int64_t>()});
      gens.push_back(std::move(gm));
    }
    if (j.contains("N") && j.at("N").get<std::size_t>() != gens.size())
      fail(ErrorKind::config, "N does not match the number of generations");
    std::vector<Family> fams;
    if (j.contains("relations") && j.at("relations").contains("families")) {
      for (const auto& f : j.at("relations").at("families")) {
        auto ref = [&](int i) { return ModeRef{f.at(i).at(0).get<int>(), f.at(i).at(1).get<int>()}; };
        fams.push_back(Family{ref(0), ref(1), ref(2), ref(3)});
      }
    }
    std::int64_t p = j.value("p", std::int64_t(1));
    std::int64_t q = j.value("q", std::int64_t(1));
    return LambdaSet(BaseSet(std::move(gens), std::move(fams)), p, q);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::config, std::string("malformed lambda-set JSON: ") + e.what());
  }
}

LambdaSet load_lambda_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::config, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return lambda_set_from_json(ss.str());
}

void save_lambda_set(const LambdaSet& set, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::config, "cannot write " + path);
  out << to_json(set) << "\n";
}

}  // namespace nlslab
