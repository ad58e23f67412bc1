#include "profmod/tower.hpp"

#include <map>

#include "profmod/error.hpp"

namespace profmod {

namespace {

// Rows of the maps M_x -> M_y for the x over y, stacked in point order.
Mat stacked_over(const BundleMorphism& f, std::size_t y) {
  const auto& tgt = f.target();
  Mat m(tgt.ring(), 0, tgt.fiber(y).dim());
  for (std::size_t x = 0; x < f.source().size(); ++x)
    if (f.space_map(x) == y) m = Mat::vstack(m, f.fiber_map(x));
  return m;
}

// Calls f on every rows x cols matrix over the ring; stops when f returns false.
template <class F>
void for_each_matrix(const ChainRing& r, std::size_t rows, std::size_t cols, F&& f) {
  Mat m(r, rows, cols);
  const std::size_t n = rows * cols;
  for (;;) {
    if (!f(m)) return;
    std::size_t i = 0;
    for (; i < n; ++i) {
      Elem& e = m.at(i / cols, i % cols);
      if (++e < r.modulus()) break;
      e = 0;
    }
    if (i == n) return;
  }
}

}  // namespace

Tower::Tower(std::vector<FiniteBundle> levels, std::vector<BundleMorphism> transitions)
    : levels_(std::move(levels)), transitions_(std::move(transitions)) {
  if (levels_.empty()) throw Error(ErrorKind::InvalidArgument, "a tower needs at least one level");
  if (transitions_.size() + 1 != levels_.size())
    throw Error(ErrorKind::InvalidArgument, "a tower with " + std::to_string(levels_.size()) +
                                                " levels needs " +
                                                std::to_string(levels_.size() - 1) + " transitions");
  for (std::size_t j = 0; j < transitions_.size(); ++j) {
    const auto& t = transitions_[j];
    const std::string name = "transition " + std::to_string(j + 1) + " -> " + std::to_string(j);
    if (!(t.source() == levels_[j + 1]) || !(t.target() == levels_[j]))
      throw Error(ErrorKind::InvalidMorphism, name + " does not connect its levels");
    std::vector<bool> hit(t.target().size(), false);
    for (auto y : t.space_map()) hit[y] = true;
    for (std::size_t y = 0; y < hit.size(); ++y) {
      if (!hit[y])
        throw Error(ErrorKind::TransitionNotSurjective,
                    name + " misses point '" + t.target().point(y) + "'");
      if (!is_surjective(stacked_over(t, y)))
        throw Error(ErrorKind::TransitionNotSurjective,
                    name + " is not surjective onto the fiber at '" + t.target().point(y) + "'");
    }
  }
}

BundleMorphism Tower::projection(std::size_t from, std::size_t to) const {
  if (from < to || from > depth())
    throw Error(ErrorKind::InvalidArgument, "projection from level " + std::to_string(from) +
                                                " to level " + std::to_string(to));
  if (from == to) return BundleMorphism::identity(levels_[from]);
  BundleMorphism out = transitions_[from - 1];
  for (std::size_t j = from - 1; j > to; --j) out = compose(out, transitions_[j - 1]);
  return out;
}

bool TowerLimitReport::passed() const {
  for (bool b : sums_surjective)
    if (!b) return false;
  for (bool b : squares_commute)
    if (!b) return false;
  return composites_functorial && limit_is_top;
}

TowerLimitReport tower_limit_checks(const Tower& t) {
  TowerLimitReport rep;
  const std::size_t d = t.depth();
  const ChainRing& r = t.top().ring();
  std::vector<DirectSum> sums;
  for (std::size_t j = 0; j <= d; ++j) sums.push_back(direct_sum(t.level(j)));
  std::vector<Mat> sm;
  for (std::size_t j = 0; j < d; ++j) {
    const auto& tr = t.transition(j);
    const ModuleHom s = sum_map(tr);
    rep.sums_surjective.push_back(s.surjective());
    bool square = true;
    for (std::size_t x = 0; x < tr.source().size(); ++x)
      if (!(sums[j + 1].injections[x].matrix() * s.matrix() ==
            tr.fiber_map(x) * sums[j].injections[tr.space_map(x)].matrix()))
        square = false;
    rep.squares_commute.push_back(square);
    sm.push_back(s.matrix());
  }
  for (std::size_t a = 0; a <= d; ++a)
    for (std::size_t c = 0; c < a; ++c) {
      Mat chain = Mat::identity(r, sums[a].sum.dim());
      for (std::size_t j = a; j > c; --j) chain = chain * sm[j - 1];
      if (!(sum_map(t.projection(a, c)).matrix() == chain)) rep.composites_functorial = false;
    }

  // Inverse limit of S_d -> ... -> S_0: tuples with s_{j+1} T_j = s_j.
  std::vector<std::size_t> off;
  std::size_t total = 0;
  for (const auto& s : sums) {
    off.push_back(total);
    total += s.sum.dim();
  }
  std::size_t ccols = 0;
  for (std::size_t j = 0; j < d; ++j) ccols += sums[j].sum.dim();
  Mat c(r, total, ccols);
  std::size_t col = 0;
  for (std::size_t j = 0; j < d; ++j) {
    const std::size_t n = sums[j].sum.dim();
    c.set_block(off[j + 1], col, sm[j]);
    c.set_block(off[j], col, Mat::identity(r, n).scaled(r.neg(1)));
    col += n;
  }
  const Mat lim = left_kernel(c);
  rep.limit_log_size = log_size(lim);
  rep.top_log_size = sums[d].sum.dim() * r.k();
  const Mat to_top = lim.block(0, off[d], lim.rows(), sums[d].sum.dim());
  rep.limit_is_top = rep.limit_log_size == rep.top_log_size && is_surjective(to_top);
  return rep;
}

std::optional<BundleMorphism> factor_at_level(const Tower& t, const FiniteBundle& target,
                                              const BundleMorphism& phi, std::size_t k) {
  const BundleMorphism pi = t.projection(t.depth(), k);
  const FiniteBundle& lk = t.level(k);
  std::vector<std::optional<std::size_t>> z(lk.size());
  for (std::size_t x = 0; x < pi.source().size(); ++x) {
    auto& slot = z[pi.space_map(x)];
    if (slot && *slot != phi.space_map(x)) return std::nullopt;
    slot = phi.space_map(x);
  }
  std::vector<std::size_t> sm;
  std::vector<Mat> fm;
  for (std::size_t y = 0; y < lk.size(); ++y) {
    const GModule& n = target.fiber(*z[y]);
    std::vector<LinearConstraint> cons;
    const Mat id = Mat::identity(lk.ring(), n.dim());
    for (std::size_t x = 0; x < pi.source().size(); ++x)
      if (pi.space_map(x) == y) cons.push_back({pi.fiber_map(x), id, phi.fiber_map(x)});
    const SolutionSet sol = solve_intertwiner(lk.fiber(y), n, cons);
    if (!sol.solvable()) return std::nullopt;
    sm.push_back(*z[y]);
    fm.push_back(unflatten(*sol.particular, lk.ring(), lk.fiber(y).dim(), n.dim()));
  }
  return BundleMorphism(lk, target, std::move(sm), std::move(fm));
}

LevelFactorization factor_through_level(const Tower& t, const FiniteBundle& target,
                                        const BundleMorphism& phi,
                                        std::optional<std::pair<std::size_t, std::size_t>> range) {
  if (!(phi.source() == t.top()) || !(phi.target() == target))
    throw Error(ErrorKind::InvalidMorphism, "factorization needs a morphism from the top level");
  const auto [lo, hi] = range.value_or(std::make_pair(std::size_t{0}, t.depth()));
  if (lo > hi || hi > t.depth())
    throw Error(ErrorKind::InvalidArgument, "level range outside the tower");
  for (std::size_t k = lo; k <= hi; ++k)
    if (auto f = factor_at_level(t, target, phi, k)) return {k, std::move(*f)};
  throw Error(ErrorKind::NoFactorization, "no level in [" + std::to_string(lo) + ", " +
                                              std::to_string(hi) + "] factors the morphism");
}

// ---- the non-splitting example ----------------------------------------------------

namespace {

std::vector<std::string> exproj_points(std::size_t k) {
  std::vector<std::string> pts;
  for (std::size_t i = 1; i <= k; ++i) pts.push_back(std::to_string(i));
  pts.push_back("*");
  return pts;
}

}  // namespace

ExprojTowers exproj_tower(const GModule& p, std::size_t depth) {
  if (p.group()->order() != 1)
    throw Error(ErrorKind::GroupMismatch, "the example uses a module over the trivial group");
  const ChainRing& r = p.ring();
  const GModule zero = GModule::zero(r, p.group());
  const std::size_t d = p.dim();
  std::vector<FiniteBundle> ml, nl;
  std::vector<BundleMorphism> epi;
  for (std::size_t k = 0; k <= depth; ++k) {
    auto pts = exproj_points(k);
    std::vector<GModule> mf(k + 1, p), nf(k, p);
    nf.push_back(zero);
    ml.emplace_back(r, p.group(), pts, mf);
    nl.emplace_back(r, p.group(), pts, nf);
    std::vector<std::size_t> id(k + 1);
    std::vector<Mat> em;
    for (std::size_t i = 0; i <= k; ++i) {
      id[i] = i;
      em.push_back(i < k ? Mat::identity(r, d) : Mat(r, d, 0));
    }
    epi.emplace_back(ml.back(), nl.back(), id, em);
  }
  std::vector<BundleMorphism> mt, nt;
  for (std::size_t k = 0; k < depth; ++k) {
    // Level k+1 points 1..k+1,* onto level k points 1..k,*.
    std::vector<std::size_t> sm;
    std::vector<Mat> mfm, nfm;
    for (std::size_t i = 0; i < k + 2; ++i) {
      sm.push_back(std::min(i, k));
      mfm.push_back(Mat::identity(r, d));
      if (i < k) nfm.push_back(Mat::identity(r, d));
      else if (i == k) nfm.push_back(Mat(r, d, 0));
      else nfm.push_back(Mat(r, 0, 0));
    }
    mt.emplace_back(ml[k + 1], ml[k], sm, mfm);
    nt.emplace_back(nl[k + 1], nl[k], sm, nfm);
  }
  return {Tower(std::move(ml), std::move(mt)), Tower(std::move(nl), std::move(nt)), std::move(epi)};
}

SplittingObstruction splitting_obstruction(const GModule& p, std::size_t depth,
                                           const SplittingCaps& caps) {
  const ChainRing& r = p.ring();
  if (!r.is_field())
    throw Error(ErrorKind::UnsupportedRing, "splitting enumeration needs field coefficients");
  if (depth < 1) throw Error(ErrorKind::InvalidArgument, "depth must be at least 1");
  if (p.dim() > caps.max_dim || r.p() > caps.max_p)
    throw Error(ErrorKind::EnumerationTooLarge,
                "splitting enumeration is capped at dim " + std::to_string(caps.max_dim) +
                    " and p <= " + std::to_string(caps.max_p));
  const ExprojTowers tw = exproj_tower(p, depth);

  // A splitting s of e : M_k -> N_k has s e = id, so its space map is the
  // identity and each fiber map is a section of e_x.
  using Splitting = std::vector<Mat>;
  auto enumerate = [&](std::size_t k) {
    const BundleMorphism& e = tw.epi[k];
    std::vector<std::vector<Mat>> per_point;
    std::size_t count = 1;
    for (std::size_t x = 0; x < e.source().size(); ++x) {
      std::vector<Mat> sections;
      const Mat& ex = e.fiber_map(x);
      for_each_matrix(r, ex.cols(), ex.rows(), [&](const Mat& s) {
        if ((s * ex).is_identity()) sections.push_back(s);
        return true;
      });
      count *= sections.size();
      if (count > caps.max_splittings)
        throw Error(ErrorKind::EnumerationTooLarge,
                    "more than " + std::to_string(caps.max_splittings) + " splittings at level " +
                        std::to_string(k));
      per_point.push_back(std::move(sections));
    }
    std::vector<Splitting> out;
    if (count == 0) return out;
    std::vector<std::size_t> idx(per_point.size(), 0);
    for (;;) {
      Splitting s;
      for (std::size_t x = 0; x < idx.size(); ++x) s.push_back(per_point[x][idx[x]]);
      out.push_back(std::move(s));
      std::size_t x = 0;
      for (; x < idx.size(); ++x) {
        if (++idx[x] < per_point[x].size()) break;
        idx[x] = 0;
      }
      if (x == idx.size()) break;
    }
    return out;
  };
  // First point of level k+1 where N-transition * s_k != s_{k+1} * M-transition.
  auto mismatch = [&](std::size_t k, const Splitting& lo, const Splitting& hi) -> std::optional<std::size_t> {
    const BundleMorphism& tm = tw.m.transition(k);
    const BundleMorphism& tn = tw.n.transition(k);
    for (std::size_t x = 0; x < hi.size(); ++x)
      if (!(tn.fiber_map(x) * lo[tn.space_map(x)] == hi[x] * tm.fiber_map(x))) return x;
    return std::nullopt;
  };

  SplittingObstruction rep;
  rep.depth = depth;
  std::vector<std::vector<Splitting>> all;
  for (std::size_t k = 1; k <= depth; ++k) {
    all.push_back(enumerate(k));
    rep.splittings.push_back(all.back().size());
  }
  rep.every_level_splits = true;
  for (auto c : rep.splittings)
    if (c == 0) rep.every_level_splits = false;

  std::vector<Splitting> reachable = all[0];
  rep.compatible_family = !reachable.empty();
  for (std::size_t k = 1; k < depth && rep.compatible_family; ++k) {
    std::vector<Splitting> next;
    for (const auto& hi : all[k])
      for (const auto& lo : reachable)
        if (!mismatch(k, lo, hi)) {
          next.push_back(hi);
          break;
        }
    if (next.empty()) {
      rep.compatible_family = false;
      rep.first_failure = std::make_pair(k, k + 1);
      if (!reachable.empty() && !all[k].empty())
        if (auto x = mismatch(k, reachable.front(), all[k].front()))
          rep.witness_point = tw.m.level(k + 1).point(*x);
    }
    reachable = std::move(next);
  }
  if (rep.compatible_family)
    rep.note = "a compatible family of splittings exists at every level up to the depth";
  else
    rep.note = "a transition-compatible family of levelwise splittings would assemble into a "
               "splitting of the limit epimorphism; none exists";
  return rep;
}

}  // namespace profmod
