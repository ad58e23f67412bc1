#pragma once

// Built-in small groups and seeded random inputs for sweeps and tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "profmod/group.hpp"
#include "profmod/module.hpp"
#include "profmod/tower.hpp"

namespace profmod {

// mt19937_64 with a plain modulo draw, so a seed gives the same stream on
// every platform (std distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }
  bool coin() { return below(2) == 1; }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

GroupPtr cyclic_group(std::size_t n);
// Symmetries of the regular n-gon, order 2n (n >= 3).
GroupPtr dihedral_group(std::size_t n);
// Generated by (0 1) and (0 1 2), in that order.
GroupPtr symmetric3();
GroupPtr klein4();
GroupPtr alternating4();
GroupPtr quaternion8();
GroupPtr elementary_abelian2_3();

struct NamedGroup {
  std::string name;
  GroupPtr group;
};
// C1 C2 C3 C4 C5 C6 S3 V4 D8 Q8 C2^3 D10 D12 A4, filtered by order.
std::vector<NamedGroup> builtin_groups(std::size_t max_order = 12);
// Throws InvalidArgument for an unknown name.
GroupPtr builtin_group(const std::string& name);

Mat random_matrix(const ChainRing& ring, std::size_t rows, std::size_t cols, Rng& rng);
Mat random_invertible(const ChainRing& ring, std::size_t n, Rng& rng);
Subgroup random_subgroup(const GroupPtr& g, Rng& rng);

// A two-dimensional representation found by random search over invertible
// generator images; falls back to a conjugate of the trivial sum.
GModule random_dim2_module(const ChainRing& ring, const GroupPtr& g, Rng& rng);

// A module drawn from trivial sums, regular modules, induced permutation
// modules and dim-2 representations (possibly summed), then written in a
// random basis. Dimension stays below max_dim when possible.
GModule random_module(const ChainRing& ring, const GroupPtr& g, Rng& rng,
                      std::size_t max_dim = 24);

// Disjoint union of 1-3 coset spaces with shuffled point labels.
GSpace random_gspace(const GroupPtr& g, Rng& rng, std::size_t max_points = 16);

// 1..max_points points (0 allowed when allow_empty). Over the trivial group
// fibers are plain of rank <= max_dim, otherwise drawn by random_module.
FiniteBundle random_bundle(const ChainRing& ring, const GroupPtr& g, Rng& rng,
                           std::size_t max_points = 3, std::size_t max_dim = 2,
                           bool allow_empty = false);

// A group-free tower: each point of level j has one or two preimages at
// level j+1, the first carrying a copy of its fiber.
Tower random_tower(const ChainRing& ring, std::size_t depth, Rng& rng, std::size_t max_points = 4,
                   std::size_t max_dim = 2);

// A random morphism between group-free bundles.
BundleMorphism random_bundle_morphism(const FiniteBundle& source, const FiniteBundle& target,
                                      Rng& rng);

// phi : top -> target built by pushing a random morphism at a random level
// `planted` up the tower, so a factorization exists at or below it.
struct FactorCase {
  Tower tower;
  FiniteBundle target;
  BundleMorphism phi;
  std::size_t planted;
};
FactorCase random_factor_case(const ChainRing& ring, Rng& rng, std::size_t max_depth = 4);

// M with rho replaced by P^-1 rho P.
GModule change_basis(const GModule& m, const Mat& p);

}  // namespace profmod
