#include "profmod/module.hpp"

#include <algorithm>
#include <string>

#include "profmod/error.hpp"

namespace profmod {

namespace {

Elem one(const ChainRing& r) { return 1 % r.modulus(); }

std::vector<Mat> extend_along_tree(const FiniteGroup& g, const ChainRing& ring,
                                   std::size_t dim, const std::vector<Mat>& gens) {
  std::vector<Mat> actions;
  actions.reserve(g.order());
  actions.push_back(Mat::identity(ring, dim));
  for (std::size_t i = 1; i < g.order(); ++i)
    actions.push_back(actions[g.parent(i)] * gens[g.parent_generator(i)]);
  return actions;
}

bool representation_consistent(const FiniteGroup& g, const std::vector<Mat>& actions) {
  if (!actions[FiniteGroup::identity()].is_identity()) return false;
  for (std::size_t a = 0; a < g.order(); ++a)
    for (auto s : g.generators())
      if (!(actions[a] * actions[s] == actions[g.mul(a, s)])) return false;
  return true;
}

}  // namespace

// ---- GModule -------------------------------------------------------------------

GModule GModule::from_generators(const ChainRing& ring, GroupPtr group, std::size_t dim,
                                 const std::vector<Mat>& generator_matrices) {
  const auto& gens = group->generators();
  if (generator_matrices.size() != gens.size()) {
    throw Error(ErrorKind::InvalidModule,
                "expected " + std::to_string(gens.size()) + " generator matrices, got " +
                    std::to_string(generator_matrices.size()));
  }
  for (std::size_t j = 0; j < gens.size(); ++j) {
    const Mat& m = generator_matrices[j];
    const std::string which = "generator " + std::to_string(j) + " matrix";
    if (!(m.ring() == ring))
      throw Error(ErrorKind::InvalidModule, which + " is over the wrong ring");
    if (m.rows() != dim || m.cols() != dim)
      throw Error(ErrorKind::InvalidModule, which + " is not " + std::to_string(dim) + "x" +
                                                std::to_string(dim));
    if (!is_invertible(m))
      throw Error(ErrorKind::InvalidModule, which + " is not invertible over " + ring.name());
  }
  auto actions = extend_along_tree(*group, ring, dim, generator_matrices);
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (!(actions[gens[j]] == generator_matrices[j]))
      throw Error(ErrorKind::InvalidModule,
                  "generator " + std::to_string(j) +
                      " matrix disagrees with the product of earlier generators");
  }
  if (!representation_consistent(*group, actions))
    throw Error(ErrorKind::InvalidModule,
                "generator matrices do not satisfy the group relations");
  return GModule(ring, std::move(group), dim,
                 std::make_shared<const std::vector<Mat>>(std::move(actions)));
}

GModule GModule::from_element_actions(const ChainRing& ring, GroupPtr group, std::size_t dim,
                                      std::vector<Mat> actions, bool validate) {
  if (actions.size() != group->order())
    throw Error(ErrorKind::InvalidModule, "one action matrix per group element required");
  if (validate) {
    for (const auto& a : actions)
      if (a.rows() != dim || a.cols() != dim || !(a.ring() == ring))
        throw Error(ErrorKind::InvalidModule, "action matrix has the wrong shape or ring");
    if (!representation_consistent(*group, actions))
      throw Error(ErrorKind::InvalidModule, "action matrices do not form a representation");
  }
  return GModule(ring, std::move(group), dim,
                 std::make_shared<const std::vector<Mat>>(std::move(actions)));
}

GModule GModule::zero(const ChainRing& ring, GroupPtr group) {
  std::vector<Mat> a(group->order(), Mat(ring, 0, 0));
  return from_element_actions(ring, std::move(group), 0, std::move(a), false);
}

GModule GModule::trivial(const ChainRing& ring, GroupPtr group) {
  std::vector<Mat> a(group->order(), Mat::identity(ring, 1));
  return from_element_actions(ring, std::move(group), 1, std::move(a), false);
}

GModule GModule::regular(const ChainRing& ring, GroupPtr group) { return free(ring, group, 1); }

GModule GModule::free(const ChainRing& ring, GroupPtr group, std::size_t rank) {
  const std::size_t n = group->order();
  std::vector<Mat> a;
  a.reserve(n);
  for (std::size_t g = 0; g < n; ++g) {
    Mat m(ring, rank * n, rank * n);
    for (std::size_t j = 0; j < rank; ++j)
      for (std::size_t x = 0; x < n; ++x) m.at(j * n + x, j * n + group->mul(x, g)) = one(ring);
    a.push_back(std::move(m));
  }
  return from_element_actions(ring, std::move(group), rank * n, std::move(a), false);
}

GModule GModule::permutation(const ChainRing& ring, const GSpace& space) {
  const auto& g = space.group();
  std::vector<Mat> a;
  for (std::size_t e = 0; e < g->order(); ++e) {
    Mat m(ring, space.points(), space.points());
    for (std::size_t x = 0; x < space.points(); ++x) m.at(x, space.act(x, e)) = one(ring);
    a.push_back(std::move(m));
  }
  return from_element_actions(ring, g, space.points(), std::move(a), false);
}

std::vector<Mat> GModule::generator_matrices() const {
  std::vector<Mat> out;
  for (auto s : group_->generators()) out.push_back(action(s));
  return out;
}

bool GModule::is_consistent() const {
  for (auto s : group_->generators())
    if (!is_invertible(action(s))) return false;
  return representation_consistent(*group_, *actions_);
}

bool operator==(const GModule& a, const GModule& b) {
  if (!(a.ring_ == b.ring_) || a.dim_ != b.dim_ || !same_group(a.group_, b.group_)) return false;
  return a.actions_ == b.actions_ || *a.actions_ == *b.actions_;
}

void require_compatible(const GModule& a, const GModule& b) {
  if (!(a.ring() == b.ring()))
    throw Error(ErrorKind::RingMismatch, a.ring().name() + " vs " + b.ring().name());
  if (!same_group(a.group(), b.group()))
    throw Error(ErrorKind::GroupMismatch, "modules are over different groups");
}

bool is_intertwiner(const GModule& source, const GModule& target, const Mat& f) {
  if (f.rows() != source.dim() || f.cols() != target.dim()) return false;
  for (auto s : source.group()->generators())
    if (!(source.action(s) * f == f * target.action(s))) return false;
  return true;
}

// ---- ModuleHom -----------------------------------------------------------------

ModuleHom::ModuleHom(GModule source, GModule target, Mat matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  require_compatible(source_, target_);
  if (!(matrix_.ring() == source_.ring()))
    throw Error(ErrorKind::RingMismatch, "homomorphism matrix over the wrong ring");
  if (matrix_.rows() != source_.dim() || matrix_.cols() != target_.dim())
    throw Error(ErrorKind::InvalidMorphism,
                "matrix is " + std::to_string(matrix_.rows()) + "x" +
                    std::to_string(matrix_.cols()) + ", expected " +
                    std::to_string(source_.dim()) + "x" + std::to_string(target_.dim()));
  if (!is_intertwiner(source_, target_, matrix_))
    throw Error(ErrorKind::InvalidMorphism, "matrix does not commute with the group action");
}

ModuleHom compose(const ModuleHom& first, const ModuleHom& second) {
  return ModuleHom(first.source(), second.target(), first.matrix() * second.matrix());
}

// ---- constructions ---------------------------------------------------------------

GModule direct_sum(const std::vector<GModule>& parts, const ChainRing& ring, GroupPtr group) {
  std::size_t dim = 0;
  for (const auto& p : parts) {
    if (!(p.ring() == ring)) throw Error(ErrorKind::RingMismatch, "direct sum summand");
    if (!same_group(p.group(), group)) throw Error(ErrorKind::GroupMismatch, "direct sum summand");
    dim += p.dim();
  }
  std::vector<Mat> a;
  for (std::size_t g = 0; g < group->order(); ++g) {
    std::vector<Mat> blocks;
    for (const auto& p : parts) blocks.push_back(p.action(g));
    a.push_back(Mat::block_diag(blocks, ring));
  }
  return GModule::from_element_actions(ring, std::move(group), dim, std::move(a), false);
}

GModule restrict(const GModule& m, const Subgroup& h) {
  if (!same_group(m.group(), h.parent()))
    throw Error(ErrorKind::NotASubgroup, "restriction to a subgroup of a different group");
  std::vector<Mat> a;
  for (std::size_t i = 0; i < h.group()->order(); ++i) a.push_back(m.action(h.to_parent(i)));
  return GModule::from_element_actions(m.ring(), h.group(), m.dim(), std::move(a), false);
}

GModule induce(const GModule& m, const Subgroup& h) {
  if (!same_group(m.group(), h.group()))
    throw Error(ErrorKind::GroupMismatch, "module is not over the inducing subgroup");
  const auto& G = *h.parent();
  const auto reps = right_coset_reps(h);
  std::vector<std::size_t> coset_of(G.order());
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (auto x : h.members()) coset_of[G.mul(x, reps[i])] = i;
  const std::size_t d = m.dim(), r = reps.size();
  std::vector<Mat> a;
  a.reserve(G.order());
  for (std::size_t g = 0; g < G.order(); ++g) {
    Mat act(m.ring(), r * d, r * d);
    for (std::size_t i = 0; i < r; ++i) {
      const std::size_t y = G.mul(reps[i], g);
      const std::size_t j = coset_of[y];
      const std::size_t twist = *h.to_local(G.mul(y, G.inv(reps[j])));
      act.set_block(i * d, j * d, m.action(twist));
    }
    a.push_back(std::move(act));
  }
  return GModule::from_element_actions(m.ring(), h.parent(), r * d, std::move(a), false);
}

GModule tensor_diag(const GModule& m, const GModule& n) {
  require_compatible(m, n);
  std::vector<Mat> a;
  for (std::size_t g = 0; g < m.group()->order(); ++g)
    a.push_back(Mat::kron(m.action(g), n.action(g)));
  return GModule::from_element_actions(m.ring(), m.group(), m.dim() * n.dim(), std::move(a),
                                       false);
}

GModule submodule(const GModule& m, const Mat& basis) {
  if (basis.cols() != m.dim()) throw Error(ErrorKind::DimensionMismatch, "submodule basis");
  std::vector<Mat> a;
  for (std::size_t g = 0; g < m.group()->order(); ++g)
    a.push_back(coordinates(basis, basis * m.action(g)));
  return GModule::from_element_actions(m.ring(), m.group(), basis.rows(), std::move(a), false);
}

Vec flatten(const Mat& m) { return m.data(); }

Mat unflatten(std::span<const Elem> v, const ChainRing& ring, std::size_t rows,
              std::size_t cols) {
  if (v.size() != rows * cols) throw Error(ErrorKind::DimensionMismatch, "unflatten");
  Mat out(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.at(i, j) = v[i * cols + j];
  return out;
}

namespace {

// Columns of the system x * A = 0 expressing rho_M(g) F = F rho_N(g) on every
// generator, for x = vec(F).
Mat intertwining_system(const GModule& m, const GModule& n, std::size_t extra_cols) {
  const auto& R = m.ring();
  const std::size_t dm = m.dim(), dn = n.dim(), un = dm * dn;
  const auto& gens = m.group()->generators();
  Mat sys(R, un, un * gens.size() + extra_cols);
  for (std::size_t j = 0; j < gens.size(); ++j) {
    const Mat& rm = m.action(gens[j]);
    const Mat& rn = n.action(gens[j]);
    const std::size_t base = j * un;
    for (std::size_t a = 0; a < dm; ++a)
      for (std::size_t b = 0; b < dn; ++b) {
        const std::size_t eq = base + a * dn + b;
        for (std::size_t c = 0; c < dm; ++c)
          if (rm(a, c) != 0) sys.at(c * dn + b, eq) = R.add(sys(c * dn + b, eq), rm(a, c));
        for (std::size_t d = 0; d < dn; ++d)
          if (rn(d, b) != 0) sys.at(a * dn + d, eq) = R.sub(sys(a * dn + d, eq), rn(d, b));
      }
  }
  return sys;
}

}  // namespace

std::vector<ModuleHom> hom_basis(const GModule& m, const GModule& n) {
  require_compatible(m, n);
  std::vector<ModuleHom> out;
  if (m.dim() == 0 || n.dim() == 0) return out;
  Mat ker = left_kernel(intertwining_system(m, n, 0));
  for (std::size_t i = 0; i < ker.rows(); ++i)
    out.emplace_back(m, n, unflatten(ker.row(i), m.ring(), m.dim(), n.dim()));
  return out;
}

SolutionSet solve_intertwiner(const GModule& m, const GModule& n,
                              const std::vector<LinearConstraint>& constraints) {
  require_compatible(m, n);
  const auto& R = m.ring();
  const std::size_t dm = m.dim(), dn = n.dim();
  std::size_t extra = 0;
  for (const auto& c : constraints) {
    if (c.left.cols() != dm || c.right.rows() != dn || c.value.rows() != c.left.rows() ||
        c.value.cols() != c.right.cols())
      throw Error(ErrorKind::DimensionMismatch, "intertwiner constraint shape");
    extra += c.value.rows() * c.value.cols();
  }
  Mat sys = intertwining_system(m, n, extra);
  Vec rhs(sys.cols(), 0);
  std::size_t col = dm * dn * m.group()->generators().size();
  for (const auto& c : constraints) {
    for (std::size_t r = 0; r < c.value.rows(); ++r)
      for (std::size_t s = 0; s < c.value.cols(); ++s, ++col) {
        for (std::size_t a = 0; a < dm; ++a) {
          if (c.left(r, a) == 0) continue;
          for (std::size_t b = 0; b < dn; ++b)
            if (c.right(b, s) != 0)
              sys.at(a * dn + b, col) = R.add(sys(a * dn + b, col), R.mul(c.left(r, a), c.right(b, s)));
        }
        rhs[col] = c.value(r, s);
      }
  }
  return solve_affine(sys, rhs);
}

PermDecomposition perm_module(const ChainRing& ring, const GSpace& space) {
  GModule module = GModule::permutation(ring, space);
  std::vector<OrbitSummand> summands;
  std::vector<GModule> parts;
  Mat assembled(ring, 0, space.points());
  for (auto& orbit : orbits(space)) {
    GModule induced = induce(GModule::trivial(ring, orbit.stabilizer.group()), orbit.stabilizer);
    const auto reps = right_coset_reps(orbit.stabilizer);
    Mat emb(ring, reps.size(), space.points());
    for (std::size_t i = 0; i < reps.size(); ++i)
      emb.at(i, space.act(orbit.representative, reps[i])) = one(ring);
    assembled = Mat::vstack(assembled, emb);
    parts.push_back(induced);
    ModuleHom hom(induced, module, std::move(emb));
    summands.push_back({std::move(orbit), std::move(induced), std::move(hom)});
  }
  GModule total = direct_sum(parts, ring, space.group());
  const bool bij = is_bijective(assembled);
  ModuleHom whole(total, module, std::move(assembled));
  return {std::move(module), std::move(summands), std::move(whole), bij};
}

// ---- Bimodule ------------------------------------------------------------------

Bimodule Bimodule::from_element_actions(const ChainRing& ring, GroupPtr left_group,
                                        GroupPtr right_group, std::size_t dim,
                                        std::vector<Mat> left, std::vector<Mat> right,
                                        bool validate) {
  if (left.size() != left_group->order() || right.size() != right_group->order())
    throw Error(ErrorKind::InvalidModule, "one action matrix per group element required");
  Bimodule b;
  b.ring_ = ring;
  b.left_group_ = std::move(left_group);
  b.right_group_ = std::move(right_group);
  b.dim_ = dim;
  b.left_ = std::make_shared<const std::vector<Mat>>(std::move(left));
  b.right_ = std::make_shared<const std::vector<Mat>>(std::move(right));
  if (validate && !b.is_consistent())
    throw Error(ErrorKind::InvalidModule, "bimodule actions are inconsistent or do not commute");
  return b;
}

bool Bimodule::is_consistent() const {
  const auto& L = *left_group_;
  const auto& K = *right_group_;
  for (const auto& a : *left_)
    if (a.rows() != dim_ || a.cols() != dim_) return false;
  for (const auto& a : *right_)
    if (a.rows() != dim_ || a.cols() != dim_) return false;
  if (!left(0).is_identity() || !right(0).is_identity()) return false;
  for (std::size_t h = 0; h < L.order(); ++h)
    for (auto s : L.generators())
      if (!(left(L.mul(h, s)) == left(s) * left(h))) return false;
  if (!representation_consistent(K, *right_)) return false;
  for (auto s : L.generators())
    for (auto t : K.generators())
      if (!(left(s) * right(t) == right(t) * left(s))) return false;
  return true;
}

Bimodule Bimodule::from_module(const GModule& m) {
  std::vector<Mat> left{Mat::identity(m.ring(), m.dim())};
  std::vector<Mat> right;
  for (std::size_t g = 0; g < m.group()->order(); ++g) right.push_back(m.action(g));
  return from_element_actions(m.ring(), trivial_group(), m.group(), m.dim(), std::move(left),
                              std::move(right), false);
}

Bimodule Bimodule::group_algebra_part(const ChainRing& ring, const Subgroup& left,
                                      const Subgroup& right, std::vector<std::size_t> support) {
  require_same_parent(left, right);
  const auto& G = *left.parent();
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> pos(G.order(), none);
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] >= G.order()) throw Error(ErrorKind::InvalidModule, "support out of range");
    pos[support[i]] = i;
  }
  const std::size_t n = support.size();
  std::vector<Mat> lm, rm;
  for (std::size_t i = 0; i < left.group()->order(); ++i) {
    const std::size_t h = left.to_parent(i);
    Mat a(ring, n, n);
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t y = pos[G.mul(h, support[x])];
      if (y == none) throw Error(ErrorKind::InvalidModule, "support not closed under the left action");
      a.at(x, y) = one(ring);
    }
    lm.push_back(std::move(a));
  }
  for (std::size_t i = 0; i < right.group()->order(); ++i) {
    const std::size_t k = right.to_parent(i);
    Mat a(ring, n, n);
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t y = pos[G.mul(support[x], k)];
      if (y == none) throw Error(ErrorKind::InvalidModule, "support not closed under the right action");
      a.at(x, y) = one(ring);
    }
    rm.push_back(std::move(a));
  }
  Bimodule b = from_element_actions(ring, left.group(), right.group(), n, std::move(lm),
                                    std::move(rm), false);
  b.support_ = std::move(support);
  return b;
}

GModule Bimodule::as_right_module() const {
  return GModule::from_element_actions(ring_, right_group_, dim_, *right_, false);
}

BalancedTensor balanced_tensor(const Bimodule& a, const Bimodule& b) {
  if (!(a.ring() == b.ring())) throw Error(ErrorKind::RingMismatch, "balanced tensor");
  if (!same_group(a.right_group(), b.left_group()))
    throw Error(ErrorKind::GroupMismatch, "balanced tensor over mismatched middle groups");
  const auto& R = a.ring();
  const auto& mid = *b.left_group();
  const std::size_t da = a.dim(), db = b.dim(), dv = da * db;

  std::vector<Vec> rel;
  for (auto s : mid.generators()) {
    const Mat& ra = a.right(s);
    const Mat& lb = b.left(s);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < db; ++j) {
        Vec v(dv, 0);
        for (std::size_t i2 = 0; i2 < da; ++i2)
          if (ra(i, i2) != 0) v[i2 * db + j] = R.add(v[i2 * db + j], ra(i, i2));
        for (std::size_t j2 = 0; j2 < db; ++j2)
          if (lb(j, j2) != 0) v[i * db + j2] = R.sub(v[i * db + j2], lb(j, j2));
        if (std::any_of(v.begin(), v.end(), [](Elem e) { return e != 0; }))
          rel.push_back(std::move(v));
      }
  }
  Quotient q = free_quotient(Mat::from_vectors(R, dv, rel));

  const Mat id_a = Mat::identity(R, da), id_b = Mat::identity(R, db);
  std::vector<Mat> left, right;
  for (std::size_t h = 0; h < a.left_group()->order(); ++h)
    left.push_back(q.section * Mat::kron(a.left(h), id_b) * q.projection);
  for (std::size_t k = 0; k < b.right_group()->order(); ++k)
    right.push_back(q.section * Mat::kron(id_a, b.right(k)) * q.projection);
  Bimodule t = Bimodule::from_element_actions(R, a.left_group(), b.right_group(), q.dim,
                                              std::move(left), std::move(right), false);
  return {std::move(t), std::move(q)};
}

ModuleTensor balanced_tensor(const GModule& m, const Bimodule& b) {
  BalancedTensor t = balanced_tensor(Bimodule::from_module(m), b);
  return {t.tensor.as_right_module(), std::move(t.quotient)};
}

ModuleHom induction_to_balanced_tensor(const GModule& m, const Subgroup& h) {
  const auto& G = h.parent();
  std::vector<std::size_t> all(G->order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const Bimodule rg = Bimodule::group_algebra_part(m.ring(), h, Subgroup::whole(G), all);
  ModuleTensor t = balanced_tensor(m, rg);
  GModule ind = induce(m, h);
  const auto reps = right_coset_reps(h);
  const std::size_t d = m.dim(), n = G->order();
  Mat f(m.ring(), ind.dim(), t.module.dim());
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t a = 0; a < d; ++a) {
      auto src = t.quotient.projection.row(a * n + reps[i]);
      std::copy(src.begin(), src.end(), f.row(i * d + a).begin());
    }
  return ModuleHom(std::move(ind), std::move(t.module), std::move(f));
}

}  // namespace profmod
