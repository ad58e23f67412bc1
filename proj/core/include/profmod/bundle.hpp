#pragma once

// Finite bundles of modules: a finite space with an R[G]-module over each
// point. Direct sums, cosection tables, limits and coproducts.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "profmod/module.hpp"

namespace profmod {

// An R-module of the given rank with the trivial group acting.
GModule plain_module(const ChainRing& ring, std::size_t dim);

class FiniteBundle {
 public:
  // Every fiber must be over `ring` and `group`; point names must be distinct.
  FiniteBundle(const ChainRing& ring, GroupPtr group, std::vector<std::string> points,
               std::vector<GModule> fibers);
  // Plain R-modules of the given ranks over points "0", "1", ...
  static FiniteBundle group_free(const ChainRing& ring, const std::vector<std::size_t>& dims);

  const ChainRing& ring() const noexcept { return ring_; }
  const GroupPtr& group() const noexcept { return group_; }
  bool group_free() const noexcept { return group_->order() == 1; }
  std::size_t size() const noexcept { return points_.size(); }
  const std::string& point(std::size_t i) const { return points_.at(i); }
  const std::vector<std::string>& points() const noexcept { return points_; }
  const GModule& fiber(std::size_t i) const { return fibers_.at(i); }
  const std::vector<GModule>& fibers() const noexcept { return fibers_; }
  std::optional<std::size_t> index_of(const std::string& name) const;
  std::size_t total_dim() const;

  friend bool operator==(const FiniteBundle& a, const FiniteBundle& b);

 private:
  ChainRing ring_;
  GroupPtr group_;
  std::vector<std::string> points_;
  std::vector<GModule> fibers_;
};

// (psi, f): f on spaces and psi_x : M_x -> N_f(x) on fibers.
class BundleMorphism {
 public:
  // Throws InvalidMorphism on a bad space map or fiber map.
  BundleMorphism(FiniteBundle source, FiniteBundle target, std::vector<std::size_t> space_map,
                 std::vector<Mat> fiber_maps);
  static BundleMorphism identity(const FiniteBundle& b);

  const FiniteBundle& source() const noexcept { return source_; }
  const FiniteBundle& target() const noexcept { return target_; }
  std::size_t space_map(std::size_t x) const { return space_map_.at(x); }
  const std::vector<std::size_t>& space_map() const noexcept { return space_map_; }
  const Mat& fiber_map(std::size_t x) const { return fiber_maps_.at(x); }
  const std::vector<Mat>& fiber_maps() const noexcept { return fiber_maps_; }

  friend bool operator==(const BundleMorphism& a, const BundleMorphism& b);

 private:
  FiniteBundle source_;
  FiniteBundle target_;
  std::vector<std::size_t> space_map_;
  std::vector<Mat> fiber_maps_;
};

// first, then second
BundleMorphism compose(const BundleMorphism& first, const BundleMorphism& second);

// A bundle with the single point "*" and the given fiber.
FiniteBundle point_bundle(const GModule& m);

struct DirectSum {
  GModule sum;
  std::vector<std::size_t> offsets;   // fiber x occupies [offsets[x], offsets[x] + dim)
  std::vector<ModuleHom> injections;  // M_x -> sum
  BundleMorphism to_point;            // B -> point_bundle(sum)
};
DirectSum direct_sum(const FiniteBundle& b);

// The map of direct sums induced by a bundle morphism.
ModuleHom sum_map(const BundleMorphism& f);

// Factorisation of a bundle morphism B -> (N at a point), given by its fiber
// maps, through the direct sum. Solved as a linear system, so existence and
// uniqueness are both checked rather than assumed.
struct SumFactorization {
  std::optional<ModuleHom> factor;
  bool unique = false;
};
SumFactorization factor_through_sum(const FiniteBundle& b, const GModule& target,
                                    const std::vector<Mat>& fiber_maps);

// ---- cosheaves -------------------------------------------------------------------

// Subsets of a space are bitmasks over point indices.
using PointSet = std::uint32_t;
inline constexpr std::size_t kMaxCosheafPoints = 10;
// Tables store 3^n extension maps.
inline constexpr std::size_t kMaxTablePoints = 6;

// M(U) = (+)_{u in U} M_u. Throws PointNotInSpace.
GModule cosection(const FiniteBundle& b, const std::vector<std::size_t>& subset);

struct CosheafCheck {
  std::size_t subsets = 0;
  std::size_t partitions = 0;
  bool passed = true;
};
// For every subset U and every partition of U into at most three blocks, the
// canonical map (+)_i M(U_i) -> M(U) is bijective. Throws EnumerationTooLarge
// above kMaxCosheafPoints points.
CosheafCheck cosheaf_check(const FiniteBundle& b);

// A module for every subset and an extension map M(U) -> M(V) for every
// U subset of V.
struct CosectionTable {
  ChainRing ring{2};
  GroupPtr group;
  std::vector<std::string> points;
  std::vector<GModule> values;                       // indexed by PointSet
  std::map<std::pair<PointSet, PointSet>, Mat> extension;

  const Mat& ext(PointSet u, PointSet v) const { return extension.at({u, v}); }
};

// Throws EnumerationTooLarge above kMaxTablePoints points.
CosectionTable bundle_to_cosheaf(const FiniteBundle& b);

// Checks functoriality and the cosheaf axiom (every subset, every partition
// into at most three blocks). Throws NotACosheaf naming the failing subset.
void check_cosheaf_table(const CosectionTable& t);
// Costalks M({x}). Throws NotACosheaf.
FiniteBundle cosheaf_to_bundle(const CosectionTable& t);
// Whether the canonical maps (+)_{u in U} a({u}) -> a(U) assemble into an
// isomorphism of tables b -> a, with b built from a's costalks.
bool tables_canonically_isomorphic(const CosectionTable& a, const CosectionTable& b);

// ---- change of groups --------------------------------------------------------------

FiniteBundle restrict_scalars_bundle(const FiniteBundle& b, const Subgroup& h);
// Sum of the restriction equals restriction of the sum, matrix for matrix.
bool restriction_commutes_with_sum(const FiniteBundle& b, const Subgroup& h);

// ---- limits and coproducts -----------------------------------------------------------

struct BundleProduct {
  FiniteBundle bundle;  // points (x, y) at x*|Y| + y, fiber M_x (+) N_y
  BundleMorphism first;
  BundleMorphism second;
};
BundleProduct bundle_product(const FiniteBundle& a, const FiniteBundle& b);
// The morphism C -> A x B with the given components.
BundleMorphism pairing(const BundleProduct& p, const BundleMorphism& f, const BundleMorphism& g);

struct BundleEqualizer {
  FiniteBundle bundle;  // points x with f(x) = g(x), fiber ker(f_x - g_x)
  BundleMorphism inclusion;
};
// Throws InvalidMorphism unless f and g are parallel; NotFree when a kernel
// is not free over Z/p^k.
BundleEqualizer bundle_equalizer(const BundleMorphism& f, const BundleMorphism& g);
// The unique h' with h = h' * inclusion. Throws InvalidMorphism if h does not
// equalise.
BundleMorphism equalizer_lift(const BundleEqualizer& e, const BundleMorphism& h);

struct BundleCoproduct {
  FiniteBundle bundle;  // points of A then points of B
  BundleMorphism first;
  BundleMorphism second;
};
BundleCoproduct bundle_coproduct(const FiniteBundle& a, const FiniteBundle& b);
BundleMorphism copairing(const BundleCoproduct& c, const BundleMorphism& f, const BundleMorphism& g);

}  // namespace profmod
