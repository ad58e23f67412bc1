#include "profmod/bundle.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>

#include "profmod/error.hpp"

namespace profmod {

GModule plain_module(const ChainRing& ring, std::size_t dim) {
  return GModule::from_element_actions(ring, trivial_group(), dim, {Mat::identity(ring, dim)},
                                       false);
}

// ---- FiniteBundle ------------------------------------------------------------------

FiniteBundle::FiniteBundle(const ChainRing& ring, GroupPtr group, std::vector<std::string> points,
                           std::vector<GModule> fibers)
    : ring_(ring), group_(std::move(group)), points_(std::move(points)), fibers_(std::move(fibers)) {
  if (points_.size() != fibers_.size())
    throw Error(ErrorKind::DimensionMismatch, "one fiber per point required");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!seen.insert(points_[i]).second)
      throw Error(ErrorKind::InvalidArgument, "duplicate point '" + points_[i] + "'");
    if (!(fibers_[i].ring() == ring_))
      throw Error(ErrorKind::RingMismatch, "fiber over '" + points_[i] + "'");
    if (!same_group(fibers_[i].group(), group_))
      throw Error(ErrorKind::GroupMismatch, "fiber over '" + points_[i] + "'");
  }
}

FiniteBundle FiniteBundle::group_free(const ChainRing& ring, const std::vector<std::size_t>& dims) {
  std::vector<std::string> pts;
  std::vector<GModule> fibers;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    pts.push_back(std::to_string(i));
    fibers.push_back(plain_module(ring, dims[i]));
  }
  return FiniteBundle(ring, trivial_group(), std::move(pts), std::move(fibers));
}

std::optional<std::size_t> FiniteBundle::index_of(const std::string& name) const {
  auto it = std::find(points_.begin(), points_.end(), name);
  if (it == points_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

std::size_t FiniteBundle::total_dim() const {
  std::size_t d = 0;
  for (const auto& f : fibers_) d += f.dim();
  return d;
}

bool operator==(const FiniteBundle& a, const FiniteBundle& b) {
  return a.ring_ == b.ring_ && same_group(a.group_, b.group_) && a.points_ == b.points_ &&
         a.fibers_ == b.fibers_;
}

// ---- BundleMorphism ------------------------------------------------------------------

BundleMorphism::BundleMorphism(FiniteBundle source, FiniteBundle target,
                               std::vector<std::size_t> space_map, std::vector<Mat> fiber_maps)
    : source_(std::move(source)),
      target_(std::move(target)),
      space_map_(std::move(space_map)),
      fiber_maps_(std::move(fiber_maps)) {
  if (!(source_.ring() == target_.ring()))
    throw Error(ErrorKind::RingMismatch, "bundle morphism");
  if (!same_group(source_.group(), target_.group()))
    throw Error(ErrorKind::GroupMismatch, "bundle morphism");
  if (space_map_.size() != source_.size() || fiber_maps_.size() != source_.size())
    throw Error(ErrorKind::InvalidMorphism, "one image and one fiber map per source point");
  for (std::size_t x = 0; x < source_.size(); ++x) {
    const std::string where = "at point '" + source_.point(x) + "'";
    if (space_map_[x] >= target_.size())
      throw Error(ErrorKind::InvalidMorphism, "space map out of range " + where);
    const GModule& m = source_.fiber(x);
    const GModule& n = target_.fiber(space_map_[x]);
    const Mat& f = fiber_maps_[x];
    if (!(f.ring() == m.ring()) || f.rows() != m.dim() || f.cols() != n.dim())
      throw Error(ErrorKind::InvalidMorphism, "fiber map has the wrong shape " + where);
    if (!is_intertwiner(m, n, f))
      throw Error(ErrorKind::InvalidMorphism, "fiber map is not G-linear " + where);
  }
}

BundleMorphism BundleMorphism::identity(const FiniteBundle& b) {
  std::vector<std::size_t> sm(b.size());
  std::vector<Mat> fm;
  for (std::size_t x = 0; x < b.size(); ++x) {
    sm[x] = x;
    fm.push_back(Mat::identity(b.ring(), b.fiber(x).dim()));
  }
  return BundleMorphism(b, b, std::move(sm), std::move(fm));
}

bool operator==(const BundleMorphism& a, const BundleMorphism& b) {
  return a.space_map_ == b.space_map_ && a.fiber_maps_ == b.fiber_maps_ && a.source_ == b.source_ &&
         a.target_ == b.target_;
}

BundleMorphism compose(const BundleMorphism& first, const BundleMorphism& second) {
  if (!(first.target() == second.source()))
    throw Error(ErrorKind::InvalidMorphism, "composite of non-composable bundle morphisms");
  std::vector<std::size_t> sm;
  std::vector<Mat> fm;
  for (std::size_t x = 0; x < first.source().size(); ++x) {
    const std::size_t y = first.space_map(x);
    sm.push_back(second.space_map(y));
    fm.push_back(first.fiber_map(x) * second.fiber_map(y));
  }
  return BundleMorphism(first.source(), second.target(), std::move(sm), std::move(fm));
}

FiniteBundle point_bundle(const GModule& m) {
  return FiniteBundle(m.ring(), m.group(), {"*"}, {m});
}

// ---- direct sums ----------------------------------------------------------------

DirectSum direct_sum(const FiniteBundle& b) {
  GModule sum = direct_sum(b.fibers(), b.ring(), b.group());
  std::vector<std::size_t> offsets;
  std::vector<ModuleHom> inj;
  std::vector<Mat> mats;
  std::size_t off = 0;
  for (const auto& f : b.fibers()) {
    offsets.push_back(off);
    Mat m(b.ring(), f.dim(), sum.dim());
    for (std::size_t i = 0; i < f.dim(); ++i) m.at(i, off + i) = 1;
    mats.push_back(m);
    inj.emplace_back(f, sum, std::move(m));
    off += f.dim();
  }
  BundleMorphism to_point(b, point_bundle(sum), std::vector<std::size_t>(b.size(), 0),
                          std::move(mats));
  return {std::move(sum), std::move(offsets), std::move(inj), std::move(to_point)};
}

ModuleHom sum_map(const BundleMorphism& f) {
  const DirectSum s = direct_sum(f.source());
  const DirectSum t = direct_sum(f.target());
  Mat m(f.source().ring(), s.sum.dim(), t.sum.dim());
  for (std::size_t x = 0; x < f.source().size(); ++x)
    m.set_block(s.offsets[x], t.offsets[f.space_map(x)], f.fiber_map(x));
  return ModuleHom(s.sum, t.sum, std::move(m));
}

SumFactorization factor_through_sum(const FiniteBundle& b, const GModule& target,
                                    const std::vector<Mat>& fiber_maps) {
  if (fiber_maps.size() != b.size())
    throw Error(ErrorKind::InvalidMorphism, "one fiber map per point required");
  const DirectSum s = direct_sum(b);
  for (std::size_t x = 0; x < b.size(); ++x)
    if (!is_intertwiner(b.fiber(x), target, fiber_maps[x]))
      throw Error(ErrorKind::InvalidMorphism, "fiber map at '" + b.point(x) + "' is not G-linear");
  std::vector<LinearConstraint> cons;
  const Mat id = Mat::identity(b.ring(), target.dim());
  for (std::size_t x = 0; x < b.size(); ++x)
    cons.push_back({s.injections[x].matrix(), id, fiber_maps[x]});
  const SolutionSet sol = solve_intertwiner(s.sum, target, cons);
  SumFactorization out;
  if (sol.solvable()) {
    out.factor.emplace(s.sum, target, unflatten(*sol.particular, b.ring(), s.sum.dim(), target.dim()));
    out.unique = sol.kernel_basis.rows() == 0;
  }
  return out;
}

// ---- cosheaves -----------------------------------------------------------------

namespace {

std::vector<std::size_t> members_of(PointSet u) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; u; ++i, u >>= 1)
    if (u & 1u) out.push_back(i);
  return out;
}

std::string describe(PointSet u, const std::vector<std::string>& names) {
  std::string s = "{";
  bool first = true;
  for (auto i : members_of(u)) {
    if (!first) s += ",";
    s += names[i];
    first = false;
  }
  return s + "}";
}

// Calls f with the blocks of every partition of `u` into at most three
// nonempty blocks (restricted growth strings).
void for_each_partition(PointSet u, const std::function<void(const std::vector<PointSet>&)>& f) {
  const auto elems = members_of(u);
  if (elems.empty()) {
    f({});
    return;
  }
  std::vector<PointSet> blocks;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == elems.size()) {
      f(blocks);
      return;
    }
    const PointSet bit = PointSet{1} << elems[i];
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      blocks[b] |= bit;
      rec(i + 1);
      blocks[b] &= ~bit;
    }
    if (blocks.size() < 3) {
      blocks.push_back(bit);
      rec(i + 1);
      blocks.pop_back();
    }
  };
  rec(0);
}

std::vector<std::size_t> fiber_offsets(const FiniteBundle& b, PointSet u) {
  std::vector<std::size_t> off(b.size(), 0);
  std::size_t acc = 0;
  for (auto i : members_of(u)) {
    off[i] = acc;
    acc += b.fiber(i).dim();
  }
  return off;
}

std::size_t cosection_dim(const FiniteBundle& b, PointSet u) {
  std::size_t d = 0;
  for (auto i : members_of(u)) d += b.fiber(i).dim();
  return d;
}

// The coordinate embedding M(U) -> M(V) for U inside V.
Mat inclusion(const FiniteBundle& b, PointSet u, PointSet v) {
  const auto ou = fiber_offsets(b, u), ov = fiber_offsets(b, v);
  Mat m(b.ring(), cosection_dim(b, u), cosection_dim(b, v));
  for (auto i : members_of(u))
    for (std::size_t a = 0; a < b.fiber(i).dim(); ++a) m.at(ou[i] + a, ov[i] + a) = 1;
  return m;
}

}  // namespace

GModule cosection(const FiniteBundle& b, const std::vector<std::size_t>& subset) {
  std::set<std::size_t> pts(subset.begin(), subset.end());
  std::vector<GModule> parts;
  for (auto i : pts) {
    if (i >= b.size())
      throw Error(ErrorKind::PointNotInSpace, "point index " + std::to_string(i) + " not in a " +
                                                  std::to_string(b.size()) + "-point space");
    parts.push_back(b.fiber(i));
  }
  return direct_sum(parts, b.ring(), b.group());
}

CosheafCheck cosheaf_check(const FiniteBundle& b) {
  if (b.size() > kMaxCosheafPoints)
    throw Error(ErrorKind::EnumerationTooLarge,
                "cosheaf check enumerates subsets of at most " +
                    std::to_string(kMaxCosheafPoints) + " points");
  CosheafCheck out;
  const PointSet all = static_cast<PointSet>((std::uint64_t{1} << b.size()) - 1);
  for (PointSet u = 0;; ++u) {
    ++out.subsets;
    const std::size_t du = cosection_dim(b, u);
    for_each_partition(u, [&](const std::vector<PointSet>& blocks) {
      ++out.partitions;
      Mat m(b.ring(), 0, du);
      for (auto blk : blocks) m = Mat::vstack(m, inclusion(b, blk, u));
      if (!is_bijective(m)) out.passed = false;
    });
    if (u == all) break;
  }
  return out;
}

CosectionTable bundle_to_cosheaf(const FiniteBundle& b) {
  if (b.size() > kMaxTablePoints)
    throw Error(ErrorKind::EnumerationTooLarge,
                "cosection tables are limited to " + std::to_string(kMaxTablePoints) + " points");
  CosectionTable t;
  t.ring = b.ring();
  t.group = b.group();
  t.points = b.points();
  const PointSet n = PointSet{1} << b.size();
  for (PointSet u = 0; u < n; ++u) t.values.push_back(cosection(b, members_of(u)));
  for (PointSet v = 0; v < n; ++v)
    for (PointSet u = v;; u = (u - 1) & v) {
      t.extension.emplace(std::make_pair(u, v), inclusion(b, u, v));
      if (u == 0) break;
    }
  return t;
}

void check_cosheaf_table(const CosectionTable& t) {
  const std::size_t np = t.points.size();
  if (np > kMaxTablePoints)
    throw Error(ErrorKind::EnumerationTooLarge,
                "cosection tables are limited to " + std::to_string(kMaxTablePoints) + " points");
  const PointSet n = PointSet{1} << np;
  if (t.values.size() != n)
    throw Error(ErrorKind::NotACosheaf, "expected one value per subset (" + std::to_string(n) + ")");
  for (PointSet u = 0; u < n; ++u) {
    const GModule& m = t.values[u];
    if (!(m.ring() == t.ring) || !same_group(m.group(), t.group))
      throw Error(ErrorKind::NotACosheaf, "value on " + describe(u, t.points) + " has the wrong ring or group");
  }
  if (t.values[0].dim() != 0)
    throw Error(ErrorKind::NotACosheaf, "value on the empty set is not zero");
  for (PointSet v = 0; v < n; ++v)
    for (PointSet u = v;; u = (u - 1) & v) {
      auto it = t.extension.find({u, v});
      const std::string where = describe(u, t.points) + " -> " + describe(v, t.points);
      if (it == t.extension.end())
        throw Error(ErrorKind::NotACosheaf, "missing extension map " + where);
      const Mat& e = it->second;
      if (e.rows() != t.values[u].dim() || e.cols() != t.values[v].dim() ||
          !is_intertwiner(t.values[u], t.values[v], e))
        throw Error(ErrorKind::NotACosheaf, "extension map " + where + " is not a module map");
      if (u == v && !e.is_identity())
        throw Error(ErrorKind::NotACosheaf, "extension map " + where + " is not the identity");
      if (u == 0) break;
    }
  // Functoriality: ext(U, V) ext(V, W) = ext(U, W).
  for (PointSet w = 0; w < n; ++w)
    for (PointSet v = w;; v = (v - 1) & w) {
      for (PointSet u = v;; u = (u - 1) & v) {
        if (!(t.ext(u, v) * t.ext(v, w) == t.ext(u, w)))
          throw Error(ErrorKind::NotACosheaf, "extension maps do not compose along " +
                                                  describe(u, t.points) + " in " +
                                                  describe(v, t.points) + " in " +
                                                  describe(w, t.points));
        if (u == 0) break;
      }
      if (v == 0) break;
    }
  for (PointSet u = 0; u < n; ++u) {
    for_each_partition(u, [&](const std::vector<PointSet>& blocks) {
      Mat m(t.ring, 0, t.values[u].dim());
      for (auto blk : blocks) m = Mat::vstack(m, t.ext(blk, u));
      if (!is_bijective(m)) {
        std::string parts;
        for (auto blk : blocks) parts += (parts.empty() ? "" : "|") + describe(blk, t.points);
        throw Error(ErrorKind::NotACosheaf, "on " + describe(u, t.points) + " the partition " +
                                                parts + " does not give a direct sum");
      }
    });
  }
}

FiniteBundle cosheaf_to_bundle(const CosectionTable& t) {
  check_cosheaf_table(t);
  std::vector<GModule> fibers;
  for (std::size_t i = 0; i < t.points.size(); ++i) fibers.push_back(t.values[PointSet{1} << i]);
  return FiniteBundle(t.ring, t.group, t.points, std::move(fibers));
}

bool tables_canonically_isomorphic(const CosectionTable& a, const CosectionTable& b) {
  if (a.points != b.points || a.values.size() != b.values.size()) return false;
  const PointSet n = static_cast<PointSet>(a.values.size());
  std::vector<Mat> phi;  // b(U) -> a(U)
  for (PointSet u = 0; u < n; ++u) {
    Mat m(a.ring, 0, a.values[u].dim());
    for (auto i : members_of(u)) m = Mat::vstack(m, a.ext(PointSet{1} << i, u));
    if (m.rows() != b.values[u].dim() || !is_bijective(m)) return false;
    phi.push_back(std::move(m));
  }
  for (PointSet v = 0; v < n; ++v)
    for (PointSet u = v;; u = (u - 1) & v) {
      if (!(b.ext(u, v) * phi[v] == phi[u] * a.ext(u, v))) return false;
      if (u == 0) break;
    }
  return true;
}

// ---- change of groups ---------------------------------------------------------------

FiniteBundle restrict_scalars_bundle(const FiniteBundle& b, const Subgroup& h) {
  if (!same_group(b.group(), h.parent()))
    throw Error(ErrorKind::NotASubgroup, "restriction to a subgroup of a different group");
  std::vector<GModule> fibers;
  for (const auto& f : b.fibers()) fibers.push_back(restrict(f, h));
  return FiniteBundle(b.ring(), h.group(), b.points(), std::move(fibers));
}

bool restriction_commutes_with_sum(const FiniteBundle& b, const Subgroup& h) {
  return direct_sum(restrict_scalars_bundle(b, h)).sum == restrict(direct_sum(b).sum, h);
}

// ---- limits and coproducts --------------------------------------------------------------

namespace {

void require_same_base(const FiniteBundle& a, const FiniteBundle& b) {
  if (!(a.ring() == b.ring())) throw Error(ErrorKind::RingMismatch, "bundles over different rings");
  if (!same_group(a.group(), b.group()))
    throw Error(ErrorKind::GroupMismatch, "bundles over different groups");
}

}  // namespace

BundleProduct bundle_product(const FiniteBundle& a, const FiniteBundle& b) {
  require_same_base(a, b);
  const auto& R = a.ring();
  std::vector<std::string> pts;
  std::vector<GModule> fibers;
  std::vector<std::size_t> s1, s2;
  std::vector<Mat> f1, f2;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y) {
      const std::size_t da = a.fiber(x).dim(), db = b.fiber(y).dim();
      pts.push_back("(" + a.point(x) + "," + b.point(y) + ")");
      fibers.push_back(direct_sum({a.fiber(x), b.fiber(y)}, R, a.group()));
      s1.push_back(x);
      s2.push_back(y);
      f1.push_back(Mat::vstack(Mat::identity(R, da), Mat(R, db, da)));
      f2.push_back(Mat::vstack(Mat(R, da, db), Mat::identity(R, db)));
    }
  FiniteBundle p(R, a.group(), std::move(pts), std::move(fibers));
  BundleMorphism first(p, a, std::move(s1), std::move(f1));
  BundleMorphism second(p, b, std::move(s2), std::move(f2));
  return {std::move(p), std::move(first), std::move(second)};
}

BundleMorphism pairing(const BundleProduct& p, const BundleMorphism& f, const BundleMorphism& g) {
  if (!(f.source() == g.source()) || !(f.target() == p.first.target()) ||
      !(g.target() == p.second.target()))
    throw Error(ErrorKind::InvalidMorphism, "pairing needs maps into the two factors from one source");
  const std::size_t nb = g.target().size();
  std::vector<std::size_t> sm;
  std::vector<Mat> fm;
  for (std::size_t c = 0; c < f.source().size(); ++c) {
    sm.push_back(f.space_map(c) * nb + g.space_map(c));
    fm.push_back(Mat::hstack(f.fiber_map(c), g.fiber_map(c)));
  }
  return BundleMorphism(f.source(), p.bundle, std::move(sm), std::move(fm));
}

BundleEqualizer bundle_equalizer(const BundleMorphism& f, const BundleMorphism& g) {
  if (!(f.source() == g.source()) || !(f.target() == g.target()))
    throw Error(ErrorKind::InvalidMorphism, "equalizer of non-parallel morphisms");
  const FiniteBundle& a = f.source();
  std::vector<std::string> pts;
  std::vector<GModule> fibers;
  std::vector<std::size_t> sm;
  std::vector<Mat> fm;
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (f.space_map(x) != g.space_map(x)) continue;
    const Mat basis = free_basis(left_kernel(f.fiber_map(x) - g.fiber_map(x)));
    pts.push_back(a.point(x));
    fibers.push_back(submodule(a.fiber(x), basis));
    sm.push_back(x);
    fm.push_back(basis);
  }
  FiniteBundle e(a.ring(), a.group(), std::move(pts), std::move(fibers));
  BundleMorphism inc(e, a, std::move(sm), std::move(fm));
  return {std::move(e), std::move(inc)};
}

BundleMorphism equalizer_lift(const BundleEqualizer& e, const BundleMorphism& h) {
  const FiniteBundle& a = e.inclusion.target();
  if (!(h.target() == a))
    throw Error(ErrorKind::InvalidMorphism, "lift needs a morphism into the equalized bundle");
  std::vector<std::size_t> sm;
  std::vector<Mat> fm;
  for (std::size_t d = 0; d < h.source().size(); ++d) {
    const auto idx = e.bundle.index_of(a.point(h.space_map(d)));
    if (!idx)
      throw Error(ErrorKind::InvalidMorphism,
                  "point '" + h.source().point(d) + "' lands outside the equalizer");
    try {
      fm.push_back(coordinates(e.inclusion.fiber_map(*idx), h.fiber_map(d)));
    } catch (const Error&) {
      throw Error(ErrorKind::InvalidMorphism,
                  "fiber map at '" + h.source().point(d) + "' does not land in the kernel");
    }
    sm.push_back(*idx);
  }
  return BundleMorphism(h.source(), e.bundle, std::move(sm), std::move(fm));
}

BundleCoproduct bundle_coproduct(const FiniteBundle& a, const FiniteBundle& b) {
  require_same_base(a, b);
  const auto& R = a.ring();
  std::vector<std::string> pts;
  std::vector<GModule> fibers;
  std::vector<std::size_t> s1, s2;
  std::vector<Mat> f1, f2;
  for (std::size_t x = 0; x < a.size(); ++x) {
    pts.push_back("(0," + a.point(x) + ")");
    fibers.push_back(a.fiber(x));
    s1.push_back(x);
    f1.push_back(Mat::identity(R, a.fiber(x).dim()));
  }
  for (std::size_t y = 0; y < b.size(); ++y) {
    pts.push_back("(1," + b.point(y) + ")");
    fibers.push_back(b.fiber(y));
    s2.push_back(a.size() + y);
    f2.push_back(Mat::identity(R, b.fiber(y).dim()));
  }
  FiniteBundle c(R, a.group(), std::move(pts), std::move(fibers));
  BundleMorphism first(a, c, std::move(s1), std::move(f1));
  BundleMorphism second(b, c, std::move(s2), std::move(f2));
  return {std::move(c), std::move(first), std::move(second)};
}

BundleMorphism copairing(const BundleCoproduct& c, const BundleMorphism& f, const BundleMorphism& g) {
  if (!(f.target() == g.target()) || !(f.source() == c.first.source()) ||
      !(g.source() == c.second.source()))
    throw Error(ErrorKind::InvalidMorphism, "copairing needs maps from the two summands to one target");
  std::vector<std::size_t> sm = f.space_map();
  sm.insert(sm.end(), g.space_map().begin(), g.space_map().end());
  std::vector<Mat> fm = f.fiber_maps();
  fm.insert(fm.end(), g.fiber_maps().begin(), g.fiber_maps().end());
  return BundleMorphism(c.bundle, f.target(), std::move(sm), std::move(fm));
}

}  // namespace profmod
