#pragma once

// Finite permutation groups with explicit element lists, subgroups, right
// cosets, double cosets and finite right G-sets.
//
// Convention: permutations act on the right, x^(gh) = (x^g)^h, so the product
// gh is the permutation x |-> h[g[x]].

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace profmod {

using Perm = std::vector<std::uint32_t>;

inline constexpr std::size_t kDefaultMaxGroupOrder = 5040;

Perm identity_perm(std::size_t degree);
Perm compose(const Perm& g, const Perm& h);  // g then h
Perm invert(const Perm& g);
bool is_permutation(const Perm& g, std::size_t degree);
std::string cycle_string(const Perm& g);

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

class FiniteGroup {
 public:
  // Breadth-first closure from the identity, generators tried in the given
  // order. Throws NotAPermutation or GroupTooLarge.
  static GroupPtr close_generators(const std::vector<Perm>& generators,
                                   std::size_t degree,
                                   std::size_t max_order = kDefaultMaxGroupOrder);

  std::size_t degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return elements_.size(); }
  static constexpr std::size_t identity() noexcept { return 0; }

  const Perm& element(std::size_t i) const { return elements_.at(i); }
  const std::vector<Perm>& elements() const noexcept { return elements_; }
  std::optional<std::size_t> index_of(const Perm& g) const;

  std::size_t mul(std::size_t a, std::size_t b) const;
  std::size_t inv(std::size_t a) const { return inverse_[a]; }
  std::size_t conj(std::size_t a, std::size_t g) const {  // g^-1 a g
    return mul(mul(inverse_[g], a), g);
  }

  // Designated generators as element indices, in input order.
  const std::vector<std::size_t>& generators() const noexcept { return generators_; }

  // Schreier tree from the closure: element(i) = element(parent(i)) *
  // generator(parent_generator(i)) for every i > 0.
  std::size_t parent(std::size_t i) const { return parent_[i]; }
  std::size_t parent_generator(std::size_t i) const { return parent_gen_[i]; }

 private:
  struct PermHash {
    std::size_t operator()(const Perm& p) const noexcept;
  };

  FiniteGroup() = default;

  std::size_t degree_ = 0;
  std::vector<Perm> elements_;
  std::unordered_map<Perm, std::size_t, PermHash> index_;
  std::vector<std::size_t> generators_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> parent_gen_;
  std::vector<std::size_t> inverse_;
  std::vector<std::uint32_t> table_;  // order^2 entries when small, else empty
};

// Same degree and same element list in the same order.
bool same_group(const FiniteGroup& a, const FiniteGroup& b);
inline bool same_group(const GroupPtr& a, const GroupPtr& b) {
  return a == b || same_group(*a, *b);
}

GroupPtr trivial_group();

// A subgroup of a parent group together with its own FiniteGroup view (built
// from the subgroup generators, so modules over the subgroup are given by
// matrices for exactly those generators).
class Subgroup {
 public:
  // Subgroup generated by the given parent elements.
  static Subgroup generated(GroupPtr parent, const std::vector<std::size_t>& generators);
  // Validates closure; throws NotASubgroup. Generators chosen greedily by
  // increasing element index.
  static Subgroup from_members(GroupPtr parent, std::vector<std::size_t> members);
  static Subgroup whole(GroupPtr parent);
  static Subgroup trivial(GroupPtr parent);

  const GroupPtr& parent() const noexcept { return parent_; }
  const GroupPtr& group() const noexcept { return group_; }
  std::size_t order() const noexcept { return members_.size(); }
  std::size_t index() const noexcept { return parent_->order() / members_.size(); }
  const std::vector<std::size_t>& members() const noexcept { return members_; }
  const std::vector<std::size_t>& generators() const noexcept { return generators_; }

  bool contains(std::size_t parent_element) const { return local_[parent_element] != npos; }
  std::size_t to_parent(std::size_t local) const { return to_parent_[local]; }
  std::optional<std::size_t> to_local(std::size_t parent_element) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return same_group(a.parent_, b.parent_) && a.members_ == b.members_;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  Subgroup(GroupPtr parent, std::vector<std::size_t> generators);

  GroupPtr parent_;
  GroupPtr group_;
  std::vector<std::size_t> members_;     // sorted parent indices
  std::vector<std::size_t> generators_;  // parent indices
  std::vector<std::size_t> to_parent_;   // local index -> parent index
  std::vector<std::size_t> local_;       // parent index -> local index or npos
};

// Throws NotASubgroup unless both live in the same parent.
void require_same_parent(const Subgroup& a, const Subgroup& b);
bool is_subgroup_of(const Subgroup& small, const Subgroup& big);
Subgroup intersect(const Subgroup& a, const Subgroup& b);
// g^-1 H g
Subgroup conjugate(const Subgroup& h, std::size_t g);

// Every subgroup, by iterated joins of cyclic subgroups; ordered by size then
// member list. Intended for small groups.
std::vector<Subgroup> all_subgroups(const GroupPtr& g);

// Right cosets Hg: one representative per coset, the least element index.
std::vector<std::size_t> right_coset_reps(const Subgroup& h);

struct CosetDecomposition {
  std::vector<std::size_t> reps;
  std::vector<std::vector<std::size_t>> cells;  // sorted element indices of HgK
  std::size_t size() const noexcept { return reps.size(); }
};

// H\G/K with least-index representatives. Verifies the partition and the
// size formula |HgK| = |H||K| / |K n g^-1 H g|.
CosetDecomposition double_coset_reps(const Subgroup& h, const Subgroup& k);
// Replaces the representatives; each must lie in its cell.
CosetDecomposition with_reps(const CosetDecomposition& d, const std::vector<std::size_t>& reps);

// A finite right G-set. The action is tabulated for every group element.
class GSpace {
 public:
  // generator_images[i][x] is x * generator(i). Throws InvalidAction.
  GSpace(GroupPtr group, std::size_t points,
         const std::vector<std::vector<std::uint32_t>>& generator_images);

  static GSpace regular(GroupPtr group);
  static GSpace trivial(GroupPtr group, std::size_t points);
  // Right cosets of h in its parent, points ordered as right_coset_reps(h).
  static GSpace cosets(const Subgroup& h);

  const GroupPtr& group() const noexcept { return group_; }
  std::size_t points() const noexcept { return points_; }
  std::size_t act(std::size_t point, std::size_t element) const {
    return table_[element * points_ + point];
  }

 private:
  GroupPtr group_;
  std::size_t points_;
  std::vector<std::uint32_t> table_;
};

struct Orbit {
  std::vector<std::size_t> points;  // sorted
  std::size_t representative;       // least point
  Subgroup stabilizer;              // of the representative
};

std::vector<Orbit> orbits(const GSpace& space);

}  // namespace profmod
