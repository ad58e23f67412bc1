#include "profmod/mackey.hpp"

#include <algorithm>

#include "profmod/error.hpp"

namespace profmod {

namespace {

std::size_t position(const std::vector<std::size_t>& sorted, std::size_t x) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
}

// For x in G: the index i and the h in H with x = h t_i.
struct CosetLookup {
  std::vector<std::size_t> coset;
  std::vector<std::size_t> h_part;  // local index in h.group()
};

CosetLookup coset_lookup(const Subgroup& h, const std::vector<std::size_t>& reps) {
  const auto& G = *h.parent();
  CosetLookup out{std::vector<std::size_t>(G.order()), std::vector<std::size_t>(G.order())};
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t l = 0; l < h.order(); ++l) {
      const std::size_t x = G.mul(h.to_parent(l), reps[i]);
      out.coset[x] = i;
      out.h_part[x] = l;
    }
  return out;
}

}  // namespace

GroupAlgebraDecomposition decompose_group_algebra(const ChainRing& ring, const Subgroup& h,
                                                  const Subgroup& k) {
  require_same_parent(h, k);
  GroupAlgebraDecomposition d;
  d.cosets = double_coset_reps(h, k);
  const auto& G = *h.parent();
  std::vector<int> seen(G.order(), 0);
  std::size_t total = 0;
  d.size_formula = true;
  for (std::size_t c = 0; c < d.cosets.size(); ++c) {
    const auto& cell = d.cosets.cells[c];
    d.parts.push_back(Bimodule::group_algebra_part(ring, h, k, cell));
    total += d.parts.back().dim();
    for (auto x : cell) ++seen[x];
    const std::size_t l = intersect(k, conjugate(h, d.cosets.reps[c])).order();
    if (cell.size() * l != h.order() * k.order()) d.size_formula = false;
  }
  d.partitions = std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; });
  d.dimensions_sum = total == G.order();
  return d;
}

HgkFactorization hgk_factorization(const ChainRing& ring, const Subgroup& h, const Subgroup& k,
                                   std::size_t g) {
  require_same_parent(h, k);
  const auto& G = *h.parent();
  if (g >= G.order()) throw Error(ErrorKind::InvalidArgument, "element index out of range");
  const Subgroup l = intersect(k, conjugate(h, g));

  std::vector<std::size_t> hg;
  for (auto x : h.members()) hg.push_back(G.mul(x, g));
  std::sort(hg.begin(), hg.end());
  std::vector<std::size_t> cell;
  for (auto x : hg)
    for (auto y : k.members()) cell.push_back(G.mul(x, y));
  std::sort(cell.begin(), cell.end());
  cell.erase(std::unique(cell.begin(), cell.end()), cell.end());

  const Bimodule a = Bimodule::group_algebra_part(ring, h, l, hg);
  const Bimodule b = Bimodule::group_algebra_part(ring, l, k, k.members());
  const Bimodule c = Bimodule::group_algebra_part(ring, h, k, cell);
  const BalancedTensor t = balanced_tensor(a, b);

  const std::size_t nk = k.order();
  Mat plain(ring, hg.size() * nk, cell.size());
  for (std::size_t i = 0; i < hg.size(); ++i)
    for (std::size_t j = 0; j < nk; ++j)
      plain.at(i * nk + j, position(cell, G.mul(hg[i], k.members()[j]))) = 1;

  HgkFactorization f;
  f.g = g;
  f.hg_size = hg.size();
  f.k_size = nk;
  f.intersection_size = l.order();
  f.cell_size = cell.size();
  f.tensor_dim = t.tensor.dim();
  f.map = t.quotient.section * plain;
  f.well_defined = t.quotient.projection * f.map == plain;
  f.right_linear = true;
  for (std::size_t y = 0; y < k.group()->order(); ++y)
    if (!(t.tensor.right(y) * f.map == f.map * c.right(y))) f.right_linear = false;
  f.left_linear = true;
  for (std::size_t x = 0; x < h.group()->order(); ++x)
    if (!(t.tensor.left(x) * f.map == f.map * c.left(x))) f.left_linear = false;
  f.bijective = is_bijective(f.map);
  f.dimension_identity = f.cell_size * f.intersection_size == f.hg_size * f.k_size &&
                         f.tensor_dim == f.cell_size;
  return f;
}

TwistedRestriction twisted_restriction(const Subgroup& h, const Subgroup& k, const GModule& m,
                                       std::size_t g) {
  const auto& G = *h.parent();
  const Subgroup l = intersect(k, conjugate(h, g));
  std::vector<std::size_t> local;
  for (auto x : l.members()) local.push_back(*k.to_local(x));
  std::sort(local.begin(), local.end());
  Subgroup lk = Subgroup::from_members(k.group(), std::move(local));
  std::vector<Mat> acts;
  for (std::size_t u = 0; u < lk.order(); ++u) {
    const std::size_t x = k.to_parent(lk.to_parent(u));
    acts.push_back(m.action(*h.to_local(G.mul(G.mul(g, x), G.inv(g)))));
  }
  GModule mg = GModule::from_element_actions(m.ring(), lk.group(), m.dim(), std::move(acts));
  return {std::move(lk), std::move(mg)};
}

MackeyReport mackey_verify(const ChainRing& ring, const Subgroup& h, const Subgroup& k,
                           const GModule& m, const std::optional<std::vector<std::size_t>>& reps) {
  require_same_parent(h, k);
  if (!same_group(m.group(), h.group()))
    throw Error(ErrorKind::GroupMismatch, "the module must be over the subgroup H");
  if (!(m.ring() == ring)) throw Error(ErrorKind::RingMismatch, "module ring");
  const auto& G = *h.parent();
  const std::size_t d = m.dim();

  const GModule ind = induce(m, h);
  GModule lhs = restrict(ind, k);
  const auto t = right_coset_reps(h);
  const CosetLookup look = coset_lookup(h, t);

  CosetDecomposition dc = double_coset_reps(h, k);
  if (reps) dc = with_reps(dc, *reps);

  std::vector<std::string> names;
  std::vector<GModule> fibers;
  std::vector<TwistedRestriction> twists;
  std::vector<std::vector<std::size_t>> s_reps;  // coset reps of L in K, as elements of G
  for (auto g : dc.reps) {
    twists.push_back(twisted_restriction(h, k, m, g));
    const auto& tw = twists.back();
    fibers.push_back(induce(tw.module, tw.intersection));
    names.push_back(cycle_string(G.element(g)));
    std::vector<std::size_t> s;
    for (auto j : right_coset_reps(tw.intersection)) s.push_back(k.to_parent(j));
    s_reps.push_back(std::move(s));
  }
  FiniteBundle rhs(ring, k.group(), names, fibers);
  const DirectSum sum = direct_sum(rhs);

  Mat map(ring, sum.sum.dim(), lhs.dim());
  MackeyReport rep{.lhs = std::move(lhs), .rhs = rhs, .rhs_sum = sum.sum, .map = map, .iso = {}, .components = {}};
  rep.well_defined = true;
  rep.proof_route = true;
  for (std::size_t c = 0; c < dc.size(); ++c) {
    const std::size_t g = dc.reps[c];
    const auto& tw = twists[c];
    MackeyComponent comp;
    comp.rep = g;
    comp.intersection_order = tw.intersection.order();
    comp.index = tw.intersection.index();
    comp.dim = fibers[c].dim();

    // e_a (x) S_j |-> e_a rho_M(h) in block i, where g S_j = h t_i.
    for (std::size_t j = 0; j < s_reps[c].size(); ++j) {
      const std::size_t x = G.mul(g, s_reps[c][j]);
      const Mat& rho = m.action(look.h_part[x]);
      const std::size_t i = look.coset[x];
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) rep.map.at(sum.offsets[c] + j * d + a, i * d + b) = rho(a, b);
    }

    // (m u) (x) y and m (x) u y must agree for u generating L and every y in K.
    comp.well_defined = true;
    const auto& lg = *tw.intersection.group();
    for (auto u_local : lg.generators()) {
      const std::size_t u = k.to_parent(tw.intersection.to_parent(u_local));
      for (auto y : k.members()) {
        const std::size_t x1 = G.mul(g, y), x2 = G.mul(g, G.mul(u, y));
        if (look.coset[x1] != look.coset[x2] ||
            !(tw.module.action(u_local) * m.action(look.h_part[x1]) == m.action(look.h_part[x2])))
          comp.well_defined = false;
      }
    }

    // Component -> M (x)_H R[HgK], e_a (x) S_j |-> class of e_a (x) g S_j.
    const auto& cell = dc.cells[c];
    const ModuleTensor mt = balanced_tensor(m, Bimodule::group_algebra_part(ring, h, k, cell));
    Mat route(ring, fibers[c].dim(), mt.module.dim());
    for (std::size_t j = 0; j < s_reps[c].size(); ++j) {
      const std::size_t pos = position(cell, G.mul(g, s_reps[c][j]));
      for (std::size_t a = 0; a < d; ++a) {
        auto src = mt.quotient.projection.row(a * cell.size() + pos);
        std::copy(src.begin(), src.end(), route.row(j * d + a).begin());
      }
    }
    comp.proof_route = is_intertwiner(fibers[c], mt.module, route) && is_bijective(route);

    rep.well_defined = rep.well_defined && comp.well_defined;
    rep.proof_route = rep.proof_route && comp.proof_route;
    rep.components.push_back(comp);
  }

  std::size_t rhs_dim = 0;
  for (const auto& comp : rep.components) rhs_dim += comp.index * d;
  rep.dimensions_match = rep.lhs.dim() == h.index() * d && rhs_dim == rep.lhs.dim() &&
                         sum.sum.dim() == rhs_dim;
  rep.intertwiner = is_intertwiner(rep.rhs_sum, rep.lhs, rep.map);
  if (rep.intertwiner) rep.iso.emplace(rep.rhs_sum, rep.lhs, rep.map);
  rep.bijective = is_bijective(rep.map);
  rep.induction_identified = induction_to_balanced_tensor(m, h).bijective();
  return rep;
}

}  // namespace profmod
