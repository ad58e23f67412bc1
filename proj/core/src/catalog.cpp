#include "profmod/catalog.hpp"

#include <algorithm>
#include <array>

#include "profmod/error.hpp"

namespace profmod {

namespace {

Perm cycle(std::size_t degree, std::initializer_list<std::uint32_t> pts) {
  Perm p = identity_perm(degree);
  std::vector<std::uint32_t> c(pts);
  for (std::size_t i = 0; i < c.size(); ++i) p[c[i]] = c[(i + 1) % c.size()];
  return p;
}

}  // namespace

GroupPtr cyclic_group(std::size_t n) {
  if (n <= 1) return FiniteGroup::close_generators({}, 1);
  Perm r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<std::uint32_t>((i + 1) % n);
  return FiniteGroup::close_generators({r}, n);
}

GroupPtr dihedral_group(std::size_t n) {
  if (n < 3) throw Error(ErrorKind::InvalidArgument, "dihedral group needs n >= 3");
  Perm r(n), s(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = static_cast<std::uint32_t>((i + 1) % n);
    s[i] = static_cast<std::uint32_t>((n - i) % n);
  }
  return FiniteGroup::close_generators({r, s}, n);
}

GroupPtr symmetric3() {
  return FiniteGroup::close_generators({cycle(3, {0, 1}), cycle(3, {0, 1, 2})}, 3);
}

GroupPtr klein4() {
  return FiniteGroup::close_generators({{1, 0, 3, 2}, {2, 3, 0, 1}}, 4);
}

GroupPtr alternating4() {
  return FiniteGroup::close_generators({cycle(4, {0, 1, 2}), {1, 0, 3, 2}}, 4);
}

GroupPtr quaternion8() {
  // Element s*4 + u stands for (-1)^s * {1, i, j, k}[u]; generators act by
  // right multiplication with i and j.
  static constexpr std::array<std::array<int, 4>, 4> unit_mul = {{
      {0, 1, 2, 3},
      {1, 4, 3, 6},   // i*1=i, i*i=-1, i*j=k, i*k=-j
      {2, 7, 4, 1},   // j*1=j, j*i=-k, j*j=-1, j*k=i
      {3, 2, 5, 4},   // k*1=k, k*i=j, k*j=-i, k*k=-1
  }};
  auto right_mul = [&](std::uint32_t by) {
    Perm p(8);
    for (std::uint32_t x = 0; x < 8; ++x) {
      const int s = static_cast<int>(x / 4), u = static_cast<int>(x % 4);
      int r = unit_mul[u][by];  // 0..3 positive, 4..7 negative (4 + unit)
      const int sign = (s + r / 4) % 2;
      const int unit = r % 4;
      p[x] = static_cast<std::uint32_t>(sign * 4 + unit);
    }
    return p;
  };
  return FiniteGroup::close_generators({right_mul(1), right_mul(2)}, 8);
}

GroupPtr elementary_abelian2_3() {
  return FiniteGroup::close_generators({cycle(6, {0, 1}), cycle(6, {2, 3}), cycle(6, {4, 5})},
                                       6);
}

std::vector<NamedGroup> builtin_groups(std::size_t max_order) {
  std::vector<NamedGroup> all = {
      {"C1", cyclic_group(1)},      {"C2", cyclic_group(2)},      {"C3", cyclic_group(3)},
      {"C4", cyclic_group(4)},      {"C5", cyclic_group(5)},      {"C6", cyclic_group(6)},
      {"S3", symmetric3()},         {"V4", klein4()},             {"D8", dihedral_group(4)},
      {"Q8", quaternion8()},        {"C2^3", elementary_abelian2_3()},
      {"D10", dihedral_group(5)},   {"D12", dihedral_group(6)},   {"A4", alternating4()},
  };
  std::vector<NamedGroup> out;
  for (auto& g : all)
    if (g.group->order() <= max_order) out.push_back(std::move(g));
  return out;
}

GroupPtr builtin_group(const std::string& name) {
  for (auto& g : builtin_groups(kDefaultMaxGroupOrder))
    if (g.name == name) return g.group;
  throw Error(ErrorKind::InvalidArgument, "unknown built-in group '" + name + "'");
}

Mat random_matrix(const ChainRing& ring, std::size_t rows, std::size_t cols, Rng& rng) {
  Mat m(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rng.below(ring.modulus());
  return m;
}

Mat random_invertible(const ChainRing& ring, std::size_t n, Rng& rng) {
  // Unit lower times unit upper triangular is always invertible, so this
  // never loops.
  Mat l = Mat::identity(ring, n), u = Mat::identity(ring, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j < i) l.at(i, j) = rng.below(ring.modulus());
      if (j > i) u.at(i, j) = rng.below(ring.modulus());
      if (i == j) {
        Elem d;
        do d = rng.below(ring.modulus());
        while (!ring.is_unit(d));
        u.at(i, i) = d;
      }
    }
  Mat p(ring, n, n);
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  for (std::size_t i = 0; i < n; ++i) p.at(i, perm[i]) = 1;
  return p * l * u;
}

Subgroup random_subgroup(const GroupPtr& g, Rng& rng) {
  std::vector<std::size_t> gens;
  const std::size_t count = rng.below(3);
  for (std::size_t i = 0; i < count; ++i) gens.push_back(rng.below(g->order()));
  return Subgroup::generated(g, gens);
}

GModule change_basis(const GModule& m, const Mat& p) {
  const Mat pinv = inverse(p);
  std::vector<Mat> a;
  for (std::size_t g = 0; g < m.group()->order(); ++g) a.push_back(pinv * m.action(g) * p);
  return GModule::from_element_actions(m.ring(), m.group(), m.dim(), std::move(a), false);
}

GModule random_dim2_module(const ChainRing& ring, const GroupPtr& g, Rng& rng) {
  const std::size_t ngens = g->generators().size();
  for (int attempt = 0; attempt < 4000; ++attempt) {
    std::vector<Mat> gens;
    for (std::size_t j = 0; j < ngens; ++j) gens.push_back(random_invertible(ring, 2, rng));
    try {
      return GModule::from_generators(ring, g, 2, gens);
    } catch (const Error&) {
    }
  }
  const GModule t = GModule::trivial(ring, g);
  return change_basis(direct_sum({t, t}, ring, g), random_invertible(ring, 2, rng));
}

namespace {

GModule random_base(const ChainRing& ring, const GroupPtr& g, Rng& rng, std::size_t max_dim) {
  for (;;) {
    switch (rng.below(4)) {
      case 0: {
        const std::size_t copies = 1 + rng.below(2);
        return direct_sum(std::vector<GModule>(copies, GModule::trivial(ring, g)), ring, g);
      }
      case 1:
        if (g->order() <= max_dim) return GModule::regular(ring, g);
        break;
      case 2: {
        const Subgroup h = random_subgroup(g, rng);
        if (h.index() <= max_dim) return induce(GModule::trivial(ring, h.group()), h);
        break;
      }
      default:
        return random_dim2_module(ring, g, rng);
    }
  }
}

}  // namespace

GModule random_module(const ChainRing& ring, const GroupPtr& g, Rng& rng, std::size_t max_dim) {
  GModule m = random_base(ring, g, rng, max_dim);
  if (rng.coin()) {
    GModule other = random_base(ring, g, rng, max_dim);
    if (m.dim() + other.dim() <= max_dim) m = direct_sum({m, other}, ring, g);
  }
  return change_basis(m, random_invertible(ring, m.dim(), rng));
}

GSpace random_gspace(const GroupPtr& g, Rng& rng, std::size_t max_points) {
  std::vector<GSpace> parts;
  std::size_t total = 0;
  const std::size_t orbits_wanted = 1 + rng.below(3);
  for (std::size_t i = 0; i < orbits_wanted; ++i) {
    Subgroup h = random_subgroup(g, rng);
    if (total > 0 && total + h.index() > max_points) continue;
    total += h.index();
    parts.push_back(GSpace::cosets(h));
  }
  std::vector<std::uint32_t> label(total);
  for (std::size_t i = 0; i < total; ++i) label[i] = static_cast<std::uint32_t>(i);
  for (std::size_t i = total; i > 1; --i) std::swap(label[i - 1], label[rng.below(i)]);

  std::vector<std::vector<std::uint32_t>> imgs(g->generators().size(),
                                               std::vector<std::uint32_t>(total));
  std::size_t offset = 0;
  for (const auto& part : parts) {
    for (std::size_t j = 0; j < g->generators().size(); ++j)
      for (std::size_t x = 0; x < part.points(); ++x)
        imgs[j][label[offset + x]] =
            label[offset + part.act(x, g->generators()[j])];
    offset += part.points();
  }
  return GSpace(g, total, imgs);
}

FiniteBundle random_bundle(const ChainRing& ring, const GroupPtr& g, Rng& rng,
                           std::size_t max_points, std::size_t max_dim, bool allow_empty) {
  const std::size_t n = allow_empty ? rng.below(max_points + 1) : 1 + rng.below(max_points);
  std::vector<std::string> pts;
  std::vector<GModule> fibers;
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back("x" + std::to_string(i));
    if (g->order() == 1) {
      fibers.push_back(plain_module(ring, rng.below(max_dim + 1)));
    } else {
      fibers.push_back(random_module(ring, g, rng, max_dim));
    }
  }
  return FiniteBundle(ring, g, std::move(pts), std::move(fibers));
}

Tower random_tower(const ChainRing& ring, std::size_t depth, Rng& rng, std::size_t max_points,
                   std::size_t max_dim) {
  auto name = [](std::size_t j, std::size_t i) {
    return "L" + std::to_string(j) + "." + std::to_string(i);
  };
  std::vector<FiniteBundle> levels;
  std::vector<BundleMorphism> trans;
  {
    const std::size_t n = 1 + rng.below(2);
    std::vector<std::size_t> dims;
    for (std::size_t i = 0; i < n; ++i) dims.push_back(rng.below(max_dim + 1));
    std::vector<std::string> pts;
    std::vector<GModule> fibers;
    for (std::size_t i = 0; i < n; ++i) {
      pts.push_back(name(0, i));
      fibers.push_back(plain_module(ring, dims[i]));
    }
    levels.emplace_back(ring, trivial_group(), pts, fibers);
  }
  for (std::size_t j = 0; j < depth; ++j) {
    const FiniteBundle& lo = levels.back();
    std::vector<std::string> pts;
    std::vector<GModule> fibers;
    std::vector<std::size_t> sm;
    std::vector<Mat> fm;
    std::size_t size = lo.size();
    for (std::size_t y = 0; y < lo.size(); ++y) {
      const std::size_t dy = lo.fiber(y).dim();
      const std::size_t extra = dy < max_dim ? rng.below(2) : 0;
      Mat head = rng.coin() ? Mat::identity(ring, dy) : random_invertible(ring, dy, rng);
      pts.push_back(name(j + 1, pts.size()));
      fibers.push_back(plain_module(ring, dy + extra));
      sm.push_back(y);
      fm.push_back(Mat::vstack(head, random_matrix(ring, extra, dy, rng)));
      if (size < max_points && rng.below(3) == 0) {
        ++size;
        const std::size_t d = rng.below(max_dim + 1);
        pts.push_back(name(j + 1, pts.size()));
        fibers.push_back(plain_module(ring, d));
        sm.push_back(y);
        fm.push_back(random_matrix(ring, d, dy, rng));
      }
    }
    FiniteBundle hi(ring, trivial_group(), pts, fibers);
    trans.emplace_back(hi, lo, sm, fm);
    levels.push_back(std::move(hi));
  }
  return Tower(std::move(levels), std::move(trans));
}

BundleMorphism random_bundle_morphism(const FiniteBundle& source, const FiniteBundle& target,
                                      Rng& rng) {
  if (target.size() == 0 && source.size() > 0)
    throw Error(ErrorKind::InvalidArgument, "no morphism into an empty bundle");
  std::vector<std::size_t> sm;
  std::vector<Mat> fm;
  for (std::size_t x = 0; x < source.size(); ++x) {
    const std::size_t z = rng.below(target.size());
    sm.push_back(z);
    fm.push_back(random_matrix(source.ring(), source.fiber(x).dim(), target.fiber(z).dim(), rng));
  }
  return BundleMorphism(source, target, std::move(sm), std::move(fm));
}

FactorCase random_factor_case(const ChainRing& ring, Rng& rng, std::size_t max_depth) {
  const std::size_t depth = 1 + rng.below(max_depth);
  Tower t = random_tower(ring, depth, rng);
  FiniteBundle target = random_bundle(ring, trivial_group(), rng, 2, 2);
  const std::size_t planted = rng.below(depth + 1);
  BundleMorphism psi = random_bundle_morphism(t.level(planted), target, rng);
  BundleMorphism phi = compose(t.projection(depth, planted), psi);
  return {std::move(t), std::move(target), std::move(phi), planted};
}

}  // namespace profmod
