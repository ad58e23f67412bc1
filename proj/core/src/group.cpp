#include "profmod/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "profmod/error.hpp"

namespace profmod {

Perm identity_perm(std::size_t degree) {
  Perm p(degree);
  std::iota(p.begin(), p.end(), 0u);
  return p;
}

Perm compose(const Perm& g, const Perm& h) {
  Perm r(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) r[x] = h[g[x]];
  return r;
}

Perm invert(const Perm& g) {
  Perm r(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) r[g[x]] = static_cast<std::uint32_t>(x);
  return r;
}

bool is_permutation(const Perm& g, std::size_t degree) {
  if (g.size() != degree) return false;
  std::vector<bool> seen(degree, false);
  for (auto x : g) {
    if (x >= degree || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

std::string cycle_string(const Perm& g) {
  std::string out;
  std::vector<bool> seen(g.size(), false);
  for (std::size_t x = 0; x < g.size(); ++x) {
    if (seen[x] || g[x] == x) continue;
    out += "(";
    std::size_t y = x;
    bool first = true;
    while (!seen[y]) {
      seen[y] = true;
      if (!first) out += " ";
      out += std::to_string(y);
      first = false;
      y = g[y];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

// ---- FiniteGroup -----------------------------------------------------------

std::size_t FiniteGroup::PermHash::operator()(const Perm& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto x : p) h = (h ^ x) * 1099511628211ull;
  return h;
}

GroupPtr FiniteGroup::close_generators(const std::vector<Perm>& generators,
                                       std::size_t degree, std::size_t max_order) {
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (!is_permutation(generators[i], degree)) {
      throw Error(ErrorKind::NotAPermutation,
                  "generator " + std::to_string(i) + " is not a permutation of {0.." +
                      std::to_string(degree == 0 ? 0 : degree - 1) + "}");
    }
  }
  std::shared_ptr<FiniteGroup> g(new FiniteGroup());
  g->degree_ = degree;
  g->elements_.push_back(identity_perm(degree));
  g->index_.emplace(g->elements_.back(), 0);
  g->parent_.push_back(0);
  g->parent_gen_.push_back(0);
  for (std::size_t i = 0; i < g->elements_.size(); ++i) {
    for (std::size_t j = 0; j < generators.size(); ++j) {
      Perm prod = compose(g->elements_[i], generators[j]);
      if (g->index_.count(prod)) continue;
      if (g->elements_.size() >= max_order) {
        throw Error(ErrorKind::GroupTooLarge,
                    "generated group exceeds the order cap " + std::to_string(max_order));
      }
      g->index_.emplace(prod, g->elements_.size());
      g->elements_.push_back(std::move(prod));
      g->parent_.push_back(i);
      g->parent_gen_.push_back(j);
    }
  }
  for (const auto& p : generators) g->generators_.push_back(g->index_.at(p));
  const std::size_t n = g->elements_.size();
  g->inverse_.resize(n);
  for (std::size_t i = 0; i < n; ++i) g->inverse_[i] = g->index_.at(invert(g->elements_[i]));
  if (n <= 1024) {
    g->table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        g->table_[a * n + b] = static_cast<std::uint32_t>(
            g->index_.at(compose(g->elements_[a], g->elements_[b])));
  }
  return g;
}

std::optional<std::size_t> FiniteGroup::index_of(const Perm& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FiniteGroup::mul(std::size_t a, std::size_t b) const {
  if (!table_.empty()) return table_[a * elements_.size() + b];
  return index_.at(compose(elements_[a], elements_[b]));
}

bool same_group(const FiniteGroup& a, const FiniteGroup& b) {
  return &a == &b || (a.degree() == b.degree() && a.elements() == b.elements());
}

GroupPtr trivial_group() {
  static const GroupPtr g = FiniteGroup::close_generators({}, 0);
  return g;
}

// ---- Subgroup --------------------------------------------------------------

namespace {

std::vector<std::size_t> closure(const FiniteGroup& g, const std::vector<std::size_t>& gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<std::size_t> members{FiniteGroup::identity()};
  in[FiniteGroup::identity()] = true;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (auto s : gens) {
      std::size_t x = g.mul(members[i], s);
      if (!in[x]) {
        in[x] = true;
        members.push_back(x);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

}  // namespace

Subgroup::Subgroup(GroupPtr parent, std::vector<std::size_t> generators)
    : parent_(std::move(parent)), generators_(std::move(generators)) {
  for (auto s : generators_) {
    if (s >= parent_->order())
      throw Error(ErrorKind::NotASubgroup, "generator index out of range");
  }
  members_ = closure(*parent_, generators_);
  std::vector<Perm> perms;
  for (auto s : generators_) perms.push_back(parent_->element(s));
  group_ = FiniteGroup::close_generators(perms, parent_->degree(), parent_->order());
  local_.assign(parent_->order(), npos);
  to_parent_.resize(group_->order());
  for (std::size_t i = 0; i < group_->order(); ++i) {
    to_parent_[i] = *parent_->index_of(group_->element(i));
    local_[to_parent_[i]] = i;
  }
}

Subgroup Subgroup::generated(GroupPtr parent, const std::vector<std::size_t>& generators) {
  return Subgroup(std::move(parent), generators);
}

Subgroup Subgroup::from_members(GroupPtr parent, std::vector<std::size_t> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  const std::size_t n = parent->order();
  std::vector<bool> in(n, false);
  for (auto m : members) {
    if (m >= n) throw Error(ErrorKind::NotASubgroup, "element index out of range");
    in[m] = true;
  }
  if (members.empty() || !in[FiniteGroup::identity()])
    throw Error(ErrorKind::NotASubgroup, "subset does not contain the identity");
  for (auto a : members) {
    if (!in[parent->inv(a)])
      throw Error(ErrorKind::NotASubgroup, "subset is not closed under inverses");
    for (auto b : members)
      if (!in[parent->mul(a, b)])
        throw Error(ErrorKind::NotASubgroup, "subset is not closed under products");
  }
  std::vector<std::size_t> gens;
  std::vector<std::size_t> current{FiniteGroup::identity()};
  for (auto m : members) {
    if (std::binary_search(current.begin(), current.end(), m)) continue;
    gens.push_back(m);
    current = closure(*parent, gens);
  }
  return Subgroup(std::move(parent), gens);
}

Subgroup Subgroup::whole(GroupPtr parent) {
  auto gens = parent->generators();
  return Subgroup(std::move(parent), gens);
}

Subgroup Subgroup::trivial(GroupPtr parent) { return Subgroup(std::move(parent), {}); }

std::optional<std::size_t> Subgroup::to_local(std::size_t parent_element) const {
  if (local_[parent_element] == npos) return std::nullopt;
  return local_[parent_element];
}

void require_same_parent(const Subgroup& a, const Subgroup& b) {
  if (!same_group(a.parent(), b.parent()))
    throw Error(ErrorKind::NotASubgroup, "subgroups live in different groups");
}

bool is_subgroup_of(const Subgroup& small, const Subgroup& big) {
  require_same_parent(small, big);
  return std::all_of(small.members().begin(), small.members().end(),
                     [&](std::size_t x) { return big.contains(x); });
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  require_same_parent(a, b);
  std::vector<std::size_t> m;
  std::set_intersection(a.members().begin(), a.members().end(), b.members().begin(),
                        b.members().end(), std::back_inserter(m));
  return Subgroup::from_members(a.parent(), std::move(m));
}

Subgroup conjugate(const Subgroup& h, std::size_t g) {
  const auto& G = *h.parent();
  std::vector<std::size_t> m;
  for (auto x : h.members()) m.push_back(G.conj(x, g));
  return Subgroup::from_members(h.parent(), std::move(m));
}

std::vector<Subgroup> all_subgroups(const GroupPtr& g) {
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::vector<std::size_t>> list;
  for (std::size_t x = 0; x < g->order(); ++x) {
    auto m = closure(*g, {x});
    if (seen.insert(m).second) list.push_back(std::move(m));
  }
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t n = list.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        std::vector<std::size_t> gens = list[i];
        gens.insert(gens.end(), list[j].begin(), list[j].end());
        auto m = closure(*g, gens);
        if (seen.insert(m).second) {
          list.push_back(std::move(m));
          grew = true;
        }
      }
  }
  std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<Subgroup> out;
  for (auto& m : list) out.push_back(Subgroup::from_members(g, std::move(m)));
  return out;
}

std::vector<std::size_t> right_coset_reps(const Subgroup& h) {
  const auto& G = *h.parent();
  std::vector<bool> covered(G.order(), false);
  std::vector<std::size_t> reps;
  for (std::size_t g = 0; g < G.order(); ++g) {
    if (covered[g]) continue;
    reps.push_back(g);
    for (auto x : h.members()) covered[G.mul(x, g)] = true;
  }
  return reps;
}

CosetDecomposition double_coset_reps(const Subgroup& h, const Subgroup& k) {
  require_same_parent(h, k);
  const auto& G = *h.parent();
  std::vector<bool> covered(G.order(), false);
  CosetDecomposition d;
  for (std::size_t g = 0; g < G.order(); ++g) {
    if (covered[g]) continue;
    std::vector<std::size_t> cell;
    for (auto x : h.members())
      for (auto y : k.members()) {
        std::size_t e = G.mul(G.mul(x, g), y);
        if (!covered[e]) {
          covered[e] = true;
          cell.push_back(e);
        }
      }
    std::sort(cell.begin(), cell.end());
    std::size_t inter = 0;
    for (auto y : k.members())
      if (h.contains(G.mul(G.mul(g, y), G.inv(g)))) ++inter;
    if (cell.size() * inter != h.order() * k.order())
      throw Error(ErrorKind::InvalidArgument, "double coset size formula violated");
    d.reps.push_back(g);
    d.cells.push_back(std::move(cell));
  }
  return d;
}

CosetDecomposition with_reps(const CosetDecomposition& d, const std::vector<std::size_t>& reps) {
  if (reps.size() != d.size())
    throw Error(ErrorKind::InvalidArgument, "wrong number of double coset representatives");
  for (std::size_t i = 0; i < reps.size(); ++i)
    if (!std::binary_search(d.cells[i].begin(), d.cells[i].end(), reps[i]))
      throw Error(ErrorKind::InvalidArgument, "representative does not lie in its double coset");
  CosetDecomposition out = d;
  out.reps = reps;
  return out;
}

// ---- GSpace ------------------------------------------------------------------

GSpace::GSpace(GroupPtr group, std::size_t points,
               const std::vector<std::vector<std::uint32_t>>& generator_images)
    : group_(std::move(group)), points_(points) {
  const auto& G = *group_;
  if (generator_images.size() != G.generators().size()) {
    throw Error(ErrorKind::InvalidAction,
                "expected images for " + std::to_string(G.generators().size()) +
                    " generators, got " + std::to_string(generator_images.size()));
  }
  for (std::size_t j = 0; j < generator_images.size(); ++j) {
    if (!is_permutation(generator_images[j], points))
      throw Error(ErrorKind::InvalidAction,
                  "generator " + std::to_string(j) + " does not permute the points");
  }
  table_.resize(G.order() * points_);
  for (std::size_t x = 0; x < points_; ++x) table_[x] = static_cast<std::uint32_t>(x);
  for (std::size_t i = 1; i < G.order(); ++i) {
    const auto& img = generator_images[G.parent_generator(i)];
    for (std::size_t x = 0; x < points_; ++x)
      table_[i * points_ + x] = img[table_[G.parent(i) * points_ + x]];
  }
  for (std::size_t a = 0; a < G.order(); ++a)
    for (std::size_t j = 0; j < generator_images.size(); ++j) {
      const std::size_t b = G.mul(a, G.generators()[j]);
      for (std::size_t x = 0; x < points_; ++x)
        if (act(x, b) != generator_images[j][act(x, a)])
          throw Error(ErrorKind::InvalidAction,
                      "generator images do not define a right action of the group");
    }
}

GSpace GSpace::regular(GroupPtr group) {
  std::vector<std::vector<std::uint32_t>> imgs;
  for (auto s : group->generators()) {
    std::vector<std::uint32_t> img(group->order());
    for (std::size_t x = 0; x < group->order(); ++x)
      img[x] = static_cast<std::uint32_t>(group->mul(x, s));
    imgs.push_back(std::move(img));
  }
  const std::size_t n = group->order();
  return GSpace(std::move(group), n, imgs);
}

GSpace GSpace::trivial(GroupPtr group, std::size_t points) {
  std::vector<std::vector<std::uint32_t>> imgs(group->generators().size(),
                                               identity_perm(points));
  return GSpace(std::move(group), points, imgs);
}

GSpace GSpace::cosets(const Subgroup& h) {
  const auto& G = *h.parent();
  const auto reps = right_coset_reps(h);
  std::vector<std::size_t> coset_of(G.order());
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (auto x : h.members()) coset_of[G.mul(x, reps[i])] = i;
  std::vector<std::vector<std::uint32_t>> imgs;
  for (auto s : G.generators()) {
    std::vector<std::uint32_t> img(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i)
      img[i] = static_cast<std::uint32_t>(coset_of[G.mul(reps[i], s)]);
    imgs.push_back(std::move(img));
  }
  return GSpace(h.parent(), reps.size(), imgs);
}

std::vector<Orbit> orbits(const GSpace& space) {
  const auto& G = *space.group();
  std::vector<bool> seen(space.points(), false);
  std::vector<Orbit> out;
  for (std::size_t x = 0; x < space.points(); ++x) {
    if (seen[x]) continue;
    std::vector<std::size_t> pts;
    for (std::size_t g = 0; g < G.order(); ++g) {
      std::size_t y = space.act(x, g);
      if (!seen[y]) {
        seen[y] = true;
        pts.push_back(y);
      }
    }
    std::sort(pts.begin(), pts.end());
    std::vector<std::size_t> stab;
    for (std::size_t g = 0; g < G.order(); ++g)
      if (space.act(x, g) == x) stab.push_back(g);
    out.push_back({std::move(pts), x, Subgroup::from_members(space.group(), std::move(stab))});
  }
  return out;
}

}  // namespace profmod
