#pragma once

// Right modules over group algebras R[G] that are free of finite rank over
// R. Elements are row vectors and g acts by m |-> m * rho(g), with
// rho(gh) = rho(g) rho(h). Action matrices are tabulated for every element.

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "profmod/group.hpp"
#include "profmod/ring.hpp"

namespace profmod {

class GModule {
 public:
  // rho on the designated generators of `group`, extended along the Schreier
  // tree and checked for consistency. Throws InvalidModule naming the
  // offending generator.
  static GModule from_generators(const ChainRing& ring, GroupPtr group, std::size_t dim,
                                 const std::vector<Mat>& generator_matrices);
  // Matrices for every element, in element order. Validation can be skipped
  // for constructions that are correct by design.
  static GModule from_element_actions(const ChainRing& ring, GroupPtr group, std::size_t dim,
                                      std::vector<Mat> actions, bool validate = true);

  static GModule zero(const ChainRing& ring, GroupPtr group);
  static GModule trivial(const ChainRing& ring, GroupPtr group);
  static GModule regular(const ChainRing& ring, GroupPtr group);
  // Free module of the given rank; basis (j, x) at index j*|G| + x.
  static GModule free(const ChainRing& ring, GroupPtr group, std::size_t rank);
  // Basis = points, g permuting them.
  static GModule permutation(const ChainRing& ring, const GSpace& space);

  const ChainRing& ring() const noexcept { return ring_; }
  const GroupPtr& group() const noexcept { return group_; }
  std::size_t dim() const noexcept { return dim_; }

  const Mat& action(std::size_t element) const { return (*actions_)[element]; }
  const Mat& generator_action(std::size_t j) const {
    return action(group_->generators()[j]);
  }
  std::vector<Mat> generator_matrices() const;

  // Re-runs the homomorphism and invertibility checks.
  bool is_consistent() const;

  friend bool operator==(const GModule& a, const GModule& b);

 private:
  GModule(const ChainRing& ring, GroupPtr group, std::size_t dim,
          std::shared_ptr<const std::vector<Mat>> actions)
      : ring_(ring), group_(std::move(group)), dim_(dim), actions_(std::move(actions)) {}

  ChainRing ring_;
  GroupPtr group_;
  std::size_t dim_;
  std::shared_ptr<const std::vector<Mat>> actions_;
};

// Throws RingMismatch / GroupMismatch.
void require_compatible(const GModule& a, const GModule& b);

bool is_intertwiner(const GModule& source, const GModule& target, const Mat& f);

// An R[G]-linear map source -> target, m |-> m * matrix.
class ModuleHom {
 public:
  // Throws InvalidMorphism unless the matrix has the right shape and
  // intertwines the actions.
  ModuleHom(GModule source, GModule target, Mat matrix);

  const GModule& source() const noexcept { return source_; }
  const GModule& target() const noexcept { return target_; }
  const Mat& matrix() const noexcept { return matrix_; }

  bool injective() const { return is_injective(matrix_); }
  bool surjective() const { return is_surjective(matrix_); }
  bool bijective() const { return is_bijective(matrix_); }

 private:
  GModule source_;
  GModule target_;
  Mat matrix_;
};

// first, then second
ModuleHom compose(const ModuleHom& first, const ModuleHom& second);

GModule direct_sum(const std::vector<GModule>& parts, const ChainRing& ring, GroupPtr group);

GModule restrict(const GModule& m, const Subgroup& h);

// Ind_H^G M = M (x)_{R[H]} R[G] for M over h.group(). Basis (a, i) at index
// i*dim(M) + a, where t_i runs over right_coset_reps(h); g acts by sending
// block i to block j with twist rho_M(t_i g t_j^-1).
GModule induce(const GModule& m, const Subgroup& h);

// Generators act by rho_M(g) (x) rho_N(g).
GModule tensor_diag(const GModule& m, const GModule& n);

// The submodule spanned by the rows of `basis` (must be free and G-stable).
GModule submodule(const GModule& m, const Mat& basis);

// A spanning set of Hom_{R[G]}(M, N) (a basis over a field); each entry is a
// Howell-reduced solution of rho_M(g) F = F rho_N(g).
std::vector<ModuleHom> hom_basis(const GModule& m, const GModule& n);

// left * F * right == value
struct LinearConstraint {
  Mat left;
  Mat right;
  Mat value;
};

// Intertwiners F : M -> N satisfying every constraint, as the solution set of
// vec(F) (row-major, dim M x dim N).
SolutionSet solve_intertwiner(const GModule& m, const GModule& n,
                              const std::vector<LinearConstraint>& constraints);
Mat unflatten(std::span<const Elem> v, const ChainRing& ring, std::size_t rows, std::size_t cols);
Vec flatten(const Mat& m);

// R[X] split into orbit submodules, each identified with the module induced
// from the trivial module of a point stabilizer.
struct OrbitSummand {
  Orbit orbit;
  GModule induced;       // Ind_{stabilizer}^G R
  ModuleHom embedding;   // induced -> R[X], image spanned by the orbit points
};
struct PermDecomposition {
  GModule module;                   // R[X]
  std::vector<OrbitSummand> summands;
  ModuleHom assembled;              // (+) induced -> R[X]
  bool bijective;
};
PermDecomposition perm_module(const ChainRing& ring, const GSpace& space);

// ---- bimodules -------------------------------------------------------------

// An R[L]-R[K] bimodule, free over R. The left action is stored so that
// h.b = b * left(h); consequently left(h1 h2) = left(h2) left(h1).
class Bimodule {
 public:
  static Bimodule from_element_actions(const ChainRing& ring, GroupPtr left_group,
                                       GroupPtr right_group, std::size_t dim,
                                       std::vector<Mat> left, std::vector<Mat> right,
                                       bool validate = true);
  // A right module viewed as a bimodule over the trivial group on the left.
  static Bimodule from_module(const GModule& m);
  // R[S] inside R[G] for a subset S of the common parent that is closed under
  // left multiplication by `left` and right multiplication by `right`. Basis
  // = S in increasing element order. Throws NotASubgroup / InvalidModule.
  static Bimodule group_algebra_part(const ChainRing& ring, const Subgroup& left,
                                     const Subgroup& right, std::vector<std::size_t> support);

  const ChainRing& ring() const noexcept { return ring_; }
  const GroupPtr& left_group() const noexcept { return left_group_; }
  const GroupPtr& right_group() const noexcept { return right_group_; }
  std::size_t dim() const noexcept { return dim_; }
  const Mat& left(std::size_t h) const { return (*left_)[h]; }
  const Mat& right(std::size_t k) const { return (*right_)[k]; }
  // Group elements spanning the basis when built by group_algebra_part.
  const std::vector<std::size_t>& support() const noexcept { return support_; }

  GModule as_right_module() const;
  bool is_consistent() const;

 private:
  Bimodule() = default;

  ChainRing ring_{2};
  GroupPtr left_group_;
  GroupPtr right_group_;
  std::size_t dim_ = 0;
  std::shared_ptr<const std::vector<Mat>> left_;
  std::shared_ptr<const std::vector<Mat>> right_;
  std::vector<std::size_t> support_;
};

// A (x)_{R[L]} B for A an (H,L)- and B an (L,K)-bimodule. The plain tensor
// A (x)_R B has basis (i, j) at index i*dim(B) + j; `quotient` maps it onto
// the balanced tensor.
struct BalancedTensor {
  Bimodule tensor;
  Quotient quotient;
};
BalancedTensor balanced_tensor(const Bimodule& a, const Bimodule& b);

struct ModuleTensor {
  GModule module;
  Quotient quotient;
};
ModuleTensor balanced_tensor(const GModule& m, const Bimodule& b);

// The explicit map Ind_H^G M -> M (x)_{R[H]} R[G], m (x) t_i |-> class of
// m (x) t_i; bijective whenever the construction is right.
ModuleHom induction_to_balanced_tensor(const GModule& m, const Subgroup& h);

}  // namespace profmod
