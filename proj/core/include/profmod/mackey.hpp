#pragma once

// The Mackey decomposition Res_K Ind_H^G M = (+)_{HgK} Ind_{K n g^-1Hg}^K Mg,
// built from explicit maps and checked matrix by matrix.
//
// Mg is M over g^-1 H g with u acting as g u g^-1.

#include <optional>
#include <vector>

#include "profmod/bundle.hpp"

namespace profmod {

// R[G] = (+) R[HgK] as R[H]-R[K] bimodules.
struct GroupAlgebraDecomposition {
  CosetDecomposition cosets;
  std::vector<Bimodule> parts;  // R[HgK] with basis the sorted cell
  bool partitions = false;      // cells are disjoint and cover G
  bool dimensions_sum = false;  // sum of dims == |G|
  bool size_formula = false;    // |HgK| = |H||K| / |K n g^-1Hg| for every cell
  bool passed() const { return partitions && dimensions_sum && size_formula; }
};
// Throws NotASubgroup unless H and K share a parent.
GroupAlgebraDecomposition decompose_group_algebra(const ChainRing& ring, const Subgroup& h,
                                                  const Subgroup& k);

// R[Hg] (x)_{R[L]} R[K] -> R[HgK] with L = K n g^-1Hg, (hg) (x) k |-> hgk.
struct HgkFactorization {
  std::size_t g = 0;
  std::size_t hg_size = 0;
  std::size_t k_size = 0;
  std::size_t intersection_size = 0;
  std::size_t cell_size = 0;
  std::size_t tensor_dim = 0;
  Mat map{ChainRing(2), 0, 0};  // balanced tensor -> R[HgK] in the cell basis
  bool well_defined = false;
  bool right_linear = false;
  bool left_linear = false;
  bool bijective = false;
  bool dimension_identity = false;
  bool passed() const {
    return well_defined && right_linear && left_linear && bijective && dimension_identity;
  }
};
HgkFactorization hgk_factorization(const ChainRing& ring, const Subgroup& h, const Subgroup& k,
                                   std::size_t g);

struct MackeyComponent {
  std::size_t rep = 0;                // g, as an element of G
  std::size_t intersection_order = 0; // |K n g^-1Hg|
  std::size_t index = 0;              // [K : K n g^-1Hg]
  std::size_t dim = 0;
  bool well_defined = false;  // balanced relations hold on generators of K n g^-1Hg
  bool proof_route = false;   // component -> M (x)_H R[HgK] is a bijective K-map
};

struct MackeyReport {
  GModule lhs;           // Res_K Ind_H^G M
  FiniteBundle rhs;      // over the double coset representatives
  GModule rhs_sum;
  Mat map;               // rhs_sum -> lhs
  std::optional<ModuleHom> iso;  // set once the map intertwines
  std::vector<MackeyComponent> components;
  bool well_defined = false;
  bool intertwiner = false;
  bool bijective = false;
  bool dimensions_match = false;
  bool proof_route = false;
  bool induction_identified = false;  // Ind_H^G M -> M (x)_H R[G] bijective
  bool passed() const {
    return well_defined && intertwiner && bijective && dimensions_match && proof_route &&
           induction_identified;
  }
};
// M is a module over h.group(). `reps` replaces the least-index double coset
// representatives (one per cell, in cell order). Throws NotASubgroup,
// GroupMismatch.
MackeyReport mackey_verify(const ChainRing& ring, const Subgroup& h, const Subgroup& k,
                           const GModule& m,
                           const std::optional<std::vector<std::size_t>>& reps = std::nullopt);

// The same module with u acting by rho(g u g^-1), over K n g^-1Hg viewed as
// a subgroup of k.group(). Returns the subgroup and the module.
struct TwistedRestriction {
  Subgroup intersection;  // inside k.group()
  GModule module;
};
TwistedRestriction twisted_restriction(const Subgroup& h, const Subgroup& k, const GModule& m,
                                       std::size_t g);

}  // namespace profmod
