#pragma once

// Finite towers of bundles: level 0 at the bottom, transitions from level
// j+1 down to level j.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "profmod/bundle.hpp"

namespace profmod {

class Tower {
 public:
  // transitions[j] : levels[j+1] -> levels[j]. Throws TransitionNotSurjective
  // when a space map, or the map (+)_{x over y} M_x -> M_y at some point y,
  // is not surjective; InvalidMorphism when a transition has the wrong ends.
  Tower(std::vector<FiniteBundle> levels, std::vector<BundleMorphism> transitions);

  std::size_t depth() const noexcept { return levels_.size() - 1; }
  const FiniteBundle& level(std::size_t j) const { return levels_.at(j); }
  const FiniteBundle& top() const { return levels_.back(); }
  const BundleMorphism& transition(std::size_t j) const { return transitions_.at(j); }
  // Composite level `from` -> level `to` (from >= to).
  BundleMorphism projection(std::size_t from, std::size_t to) const;

 private:
  std::vector<FiniteBundle> levels_;
  std::vector<BundleMorphism> transitions_;
};

struct TowerLimitReport {
  std::vector<bool> sums_surjective;  // per transition
  std::vector<bool> squares_commute;  // per transition
  bool composites_functorial = true;
  std::size_t limit_log_size = 0;  // log_p of the inverse limit of the sums
  std::size_t top_log_size = 0;
  bool limit_is_top = false;
  bool passed() const;
};
TowerLimitReport tower_limit_checks(const Tower& t);

struct LevelFactorization {
  std::size_t level = 0;
  BundleMorphism factor;  // level -> target, with projection(depth, level) * factor == phi
};
// Least k in [lo, hi] (default [0, depth]) through which phi : top -> target
// factors. Throws NoFactorization when no level in the range works.
LevelFactorization factor_through_level(const Tower& t, const FiniteBundle& target,
                                        const BundleMorphism& phi,
                                        std::optional<std::pair<std::size_t, std::size_t>> range = {});
// The factoring morphism at level k, if there is one.
std::optional<BundleMorphism> factor_at_level(const Tower& t, const FiniteBundle& target,
                                              const BundleMorphism& phi, std::size_t k);

// ---- the non-splitting example ----------------------------------------------------

// Level k has points "1".."k","*". M is constant with fiber P; N has fiber P
// at 1..k and 0 at "*". The transition k+1 -> k sends k+1 to "*".
struct ExprojTowers {
  Tower m;
  Tower n;
  std::vector<BundleMorphism> epi;  // M_k -> N_k
};
ExprojTowers exproj_tower(const GModule& p, std::size_t depth);

struct SplittingCaps {
  std::size_t max_dim = 2;
  std::uint64_t max_p = 3;
  std::size_t max_splittings = 100000;
};

struct SplittingObstruction {
  std::size_t depth = 0;
  std::vector<std::size_t> splittings;  // per level 1..depth
  bool every_level_splits = false;
  bool compatible_family = false;
  std::optional<std::pair<std::size_t, std::size_t>> first_failure;  // levels (k, k+1)
  std::optional<std::string> witness_point;
  std::string note;
};
// Enumerates every splitting of M_k -> N_k for k = 1..depth and searches for
// a family compatible with the transitions. Throws EnumerationTooLarge
// beyond the caps, UnsupportedRing off a field.
SplittingObstruction splitting_obstruction(const GModule& p, std::size_t depth,
                                           const SplittingCaps& caps = {});

}  // namespace profmod
