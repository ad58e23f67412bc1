#pragma once

// Projectivity, syzygies and bounded homological invariants of modules over
// F_p[G], plus the two-term permutation resolution attached to a G-tree.
// Everything here except the tree exactness checks needs a field (k == 1).

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "profmod/module.hpp"

namespace profmod {

// Throws UnsupportedRing unless the ring is a field.
void require_field(const ChainRing& ring, const char* operation);

// A projective dimension found below a cutoff, or ABOVE_CUTOFF.
class ProjDim {
 public:
  static ProjDim exactly(unsigned v) { return ProjDim(v); }
  static ProjDim above_cutoff() { return ProjDim(); }

  bool is_above_cutoff() const noexcept { return !value_.has_value(); }
  std::optional<unsigned> value() const noexcept { return value_; }
  std::string to_string() const;

  friend bool operator==(const ProjDim&, const ProjDim&) = default;

 private:
  ProjDim() = default;
  explicit ProjDim(unsigned v) : value_(v) {}
  std::optional<unsigned> value_;
};

// ABOVE_CUTOFF absorbs.
ProjDim max(const ProjDim& a, const ProjDim& b);

// Rows of a generating set of M as an R[G]-module: basis vectors are added
// greedily whenever they leave the submodule generated so far.
Mat spin_generators(const GModule& m);

enum class CoverKind { spin, full_basis };

// A free module F = R[G]^rank and the epimorphism F -> M sending the j-th
// free generator to the j-th row of `generators`.
struct FreeCover {
  Mat generators;    // rank x dim M
  GModule free;      // basis (j, x) at j*|G| + x
  ModuleHom epi;     // free -> M
};
FreeCover free_cover(const GModule& m, CoverKind kind = CoverKind::spin);

struct ProjectivityWitness {
  FreeCover cover;
  ModuleHom section;  // M -> cover.free with section * epi = id
};
struct ProjectivityResult {
  bool projective;
  std::optional<ProjectivityWitness> witness;
};

// Decides whether the cover epimorphism F -> M splits. Sections M -> R[G]^t
// are parametrised by R-linear maps L : M -> R^t through
// m |-> sum_x (m rho(x^-1) L) (x) x, so splitting is one affine system in L.
ProjectivityResult is_projective(const GModule& m, CoverKind kind = CoverKind::spin);

struct Syzygy {
  FreeCover cover;
  Mat kernel;      // rows: basis of ker(epi) inside the free module (RREF)
  GModule module;  // the kernel with the induced action
};
Syzygy syzygy(const GModule& m, CoverKind kind = CoverKind::spin);

// Least i <= cutoff with Omega^i M projective.
ProjDim pd_bounded(const GModule& m, unsigned cutoff, CoverKind kind = CoverKind::spin);

// Coinvariants M_G = M / span{m g - m}.
Quotient coinvariants(const GModule& m);

// Tor_i(M, N) with N a left module encoded as a right module: g.n = n rho_N(g^-1).
struct TorResult {
  std::size_t dimension;
  // Degree 0: basis of M (x)_G N as coinvariants of the diagonal tensor.
  // Degree i > 0: basis of the kernel inside (Omega (x)_G N) coordinates.
  Mat carrier;
};
TorResult tor_bounded(const GModule& m, const GModule& n, unsigned i,
                      CoverKind kind = CoverKind::spin);

std::size_t ext_bounded(const GModule& m, const GModule& n, unsigned i,
                        CoverKind kind = CoverKind::spin);

// ---- trees ---------------------------------------------------------------------

// A finite graph with a right G-action on vertices and edges. An edge e runs
// from tail to head; g may reverse it only in characteristic 2, where
// head - tail = tail - head.
struct FiniteGraph {
  GroupPtr group;
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (tail, head)
  std::vector<std::vector<std::uint32_t>> vertex_images;   // per group generator
  std::vector<std::vector<std::uint32_t>> edge_images;     // per group generator
};

struct ExactnessChecks {
  bool boundary_injective = false;
  bool composite_zero = false;
  bool image_equals_kernel = false;
  bool augmentation_surjective = false;
  bool exact() const noexcept {
    return boundary_injective && composite_zero && image_equals_kernel &&
           augmentation_surjective;
  }
};

struct TreeResolutionReport {
  std::size_t edge_dim = 0;
  std::size_t vertex_dim = 0;
  Mat boundary;      // R[E] -> R[V], e |-> head - tail
  Mat augmentation;  // R[V] -> R
  ExactnessChecks plain;
  ExactnessChecks tensored;  // after M (x) - with the diagonal action
  // Field coefficients only.
  std::optional<ProjDim> pd_vertices;  // pd(M (x) R[V])
  std::optional<ProjDim> pd_edges;     // pd(M (x) R[E])
  std::optional<ProjDim> pd_module;    // pd(M)
  // Present when both tensored terms are projective: ring global dimension
  // (0) plus resolution length (1).
  std::optional<unsigned> derived_bound;
  bool bound_respected = true;

  bool passed() const noexcept { return plain.exact() && tensored.exact() && bound_respected; }
};

// Throws NotATree (disconnected, or |E| != |V| - 1) and ActionNotSimplicial.
// M defaults to the trivial module.
TreeResolutionReport augmentation_resolution_check(const ChainRing& ring, const FiniteGraph& graph,
                                                   const std::optional<GModule>& m = std::nullopt,
                                                   unsigned cutoff = 4);

}  // namespace profmod
