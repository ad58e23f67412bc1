#pragma once

// Tensor products of bundles over X x Y with fiber M_x (x)_R N_y.
//
// Fibers are plain R-modules, or one side carries an R[G]-action that acts on
// its tensor factor. Basis of M_x (x) N_y: a * dim(N_y) + b.

#include <cstddef>
#include <vector>

#include "profmod/bundle.hpp"

namespace profmod {

// Points "(x,y)" at x * |Y| + y. Throws RingMismatch; GroupMismatch when both
// sides carry a nontrivial group.
FiniteBundle bundle_tensor(const FiniteBundle& a, const FiniteBundle& b);

// M (x)_R N with the group of whichever side has one.
GModule tensor_one_sided(const GModule& m, const GModule& n);

// (+)M_x (x) (+)N_y -> (+)(M_x (x) N_y) on basis tensors.
struct TensorCommCheck {
  ModuleHom map;
  bool bijective = false;
};
TensorCommCheck tensorcomm_check(const FiniteBundle& a, const FiniteBundle& b);

// Element number i of R^dim: coordinate j is digit j of i in base |R|.
Vec enumerate_element(const ChainRing& ring, std::size_t dim, std::size_t index);
std::size_t element_count(const ChainRing& ring, std::size_t dim);

// A map on pairs of fiber elements. For the pair (x, y) at x * |Y| + y,
// values[pair][i * |N_y| + j] is psi(element i of M_x, element j of N_y),
// a vector in the fiber of `target` over space_map[pair].
struct PairMap {
  std::vector<std::size_t> space_map;
  std::vector<std::vector<Vec>> values;
};
// psi(m, n) = m (x) n into bundle_tensor(a, b).
PairMap canonical_pair_map(const FiniteBundle& a, const FiniteBundle& b);
// psi(m, n) = (m (x) n) * forms[pair] into `target`.
PairMap pair_map_from_matrices(const FiniteBundle& a, const FiniteBundle& b,
                               const std::vector<std::size_t>& space_map,
                               const std::vector<Mat>& forms);

// |M_x| * |N_y| above this is refused.
inline constexpr std::size_t kMaxPairEnumeration = 1024;

struct MiddleLinearFactorization {
  BundleMorphism factor;  // bundle_tensor(a, b) -> target
  std::size_t pairs_checked = 0;
  bool pure_tensors_span = false;
};
// Checks that psi is additive in each variable, balanced
// (psi(mr, n) = psi(m, rn) = psi(m, n) r for every r in R) and G-linear in
// the side carrying the group, then returns the unique factorization through
// bundle_tensor(a, b). Throws NotMiddleLinear naming the pair and the law
// that fails; EnumerationTooLarge past kMaxPairEnumeration.
MiddleLinearFactorization middle_linear_check(const FiniteBundle& a, const FiniteBundle& b,
                                              const FiniteBundle& target, const PairMap& psi);

}  // namespace profmod
