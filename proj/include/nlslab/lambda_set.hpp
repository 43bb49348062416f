#pragma once

// The resonant set Lambda = Lambda_1 u ... u Lambda_N: construction of the
// unscaled base set, anisotropic scaling, and the exhaustive property check.

#include "nlslab/lattice.hpp"
#include "nlslab/numeric.hpp"

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace nlslab {

/// Position of a mode: generation (0-based) and index within it.
struct ModeRef {
  int gen = 0;
  int idx = 0;
  friend auto operator<=>(const ModeRef&, const ModeRef&) = default;
};

/// Nuclear family (parent1, child1, parent2, child2): parents in generation g,
/// children in g + 1, parent1 - child1 + parent2 - child2 = 0.
struct Family {
  ModeRef parent1, child1, parent2, child2;
};

struct Relations {
  std::optional<ModeRef> spouse;
  std::optional<ModeRef> sibling;
  std::optional<std::array<ModeRef, 2>> children;
  std::optional<std::array<ModeRef, 2>> parents;
};

class BaseSet {
 public:
  BaseSet() = default;
  BaseSet(std::vector<std::vector<Mode>> generations, std::vector<Family> families);

  std::size_t num_generations() const { return gens_.size(); }
  std::size_t size() const { return index_.size(); }
  const std::vector<std::vector<Mode>>& generations() const { return gens_; }
  const std::vector<Family>& families() const { return families_; }
  const Mode& at(ModeRef r) const { return gens_.at(r.gen).at(r.idx); }
  std::optional<ModeRef> find(const Mode& m) const;
  const Relations& relations(ModeRef r) const { return rel_.at(r.gen).at(r.idx); }
  std::vector<ModeRef> refs() const;
  std::int64_t max_abs_coordinate() const;

 private:
  std::vector<std::vector<Mode>> gens_;
  std::vector<Family> families_;
  std::unordered_map<Mode, ModeRef, ModeHash> index_;
  std::vector<std::vector<Relations>> rel_;
};

/// Base set scaled by (j, k) -> (p j, q k).
class LambdaSet {
 public:
  LambdaSet() = default;
  LambdaSet(BaseSet base, std::int64_t p, std::int64_t q);

  const BaseSet& base() const { return base_; }
  std::int64_t p() const { return p_; }
  std::int64_t q() const { return q_; }
  /// (p/q)^2, the ratio for which scaled families are exactly resonant.
  Rational ratio2() const { return Rational(p_ * p_, q_ * q_); }

  std::size_t num_generations() const { return gens_.size(); }
  std::size_t size() const { return base_.size(); }
  const std::vector<std::vector<Mode>>& generations() const { return gens_; }
  const Mode& at(ModeRef r) const { return gens_.at(r.gen).at(r.idx); }
  std::optional<ModeRef> find(const Mode& m) const;
  bool contains(const Mode& m) const { return index_.count(m) != 0; }
  const Relations& relations(ModeRef r) const { return base_.relations(r); }
  const std::vector<Family>& families() const { return base_.families(); }
  /// All modes, generation by generation.
  std::vector<Mode> modes() const;
  Quartet family_quartet(const Family& f) const;

 private:
  BaseSet base_;
  std::int64_t p_ = 1, q_ = 1;
  std::vector<std::vector<Mode>> gens_;
  std::unordered_map<Mode, ModeRef, ModeHash> index_;
};

struct BuildOptions {
  std::uint64_t seed = 1;
  std::size_t node_budget = 2'000'000;
  /// Nodes spent on one generation before moving on to the next dilation.
  std::size_t generation_budget = 20'000;
  /// Half-width of the box for random first-generation points (0 = automatic).
  std::int64_t box = 0;
  /// Global dilations tried, in order, when a generation cannot be placed.
  std::vector<std::int64_t> dilations{5, 13, 17, 29, 37, 41};
};

/// Backtracking construction of a base set with 2^(N-1) modes per generation.
BaseSet build_base_set(int N, const BuildOptions& options = {});

LambdaSet scale_set(const BaseSet& base, std::int64_t p, std::int64_t q);

/// Unit square: Lambda_1 = {(0,0),(1,1)}, Lambda_2 = {(1,0),(0,1)}.
BaseSet unit_square();

struct PropertyCheck {
  std::string name;
  bool passed = true;
  std::vector<Quartet> witnesses;
  std::vector<std::string> notes;
};

struct PropertyReport {
  PropertyCheck closure{"P1'", true, {}, {}};
  PropertyCheck spouse_children{"P2", true, {}, {}};
  PropertyCheck parents_sibling{"P3", true, {}, {}};
  PropertyCheck nondegeneracy{"P4", true, {}, {}};
  PropertyCheck faithfulness{"P5'", true, {}, {}};
  PropertyCheck linear_relations{"P6", true, {}, {}};
  std::size_t triples_scanned = 0;
  std::size_t budget = 0;
  std::size_t families_found = 0;

  bool all_passed() const;
  std::vector<const PropertyCheck*> checks() const;
  std::string summary() const;
};

struct VerifyOptions {
  std::size_t triple_budget = 20'000'000;
  /// Resonance ratio r^2 used for Omega; defaults to the set's (p/q)^2.
  std::optional<Rational> ratio2;
  std::size_t max_witnesses = 16;
};

/// Exhaustive scan of ordered triples, fourth vertex solved from momentum.
PropertyReport verify_properties(const LambdaSet& set, const VerifyOptions& options = {});

/// S_i = sum over generation i of |n|^(2s).
std::vector<Real> generation_weights(const LambdaSet& set, double s);

struct RadiusBracket {
  double lo = 0;  // min |n|/q over Lambda without the origin
  double hi = 0;
  bool origin_present = false;
};

RadiusBracket radius_bracket(const LambdaSet& set);

std::string to_json(const LambdaSet& set);
LambdaSet lambda_set_from_json(const std::string& text);
LambdaSet load_lambda_set(const std::string& path);
void save_lambda_set(const LambdaSet& set, const std::string& path);

}  // namespace nlslab
