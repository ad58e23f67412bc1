#include "profmod/bundle_tensor.hpp"

#include <limits>

#include "profmod/error.hpp"

namespace profmod {

namespace {

bool nontrivial(const GroupPtr& g) { return g->order() > 1; }

GroupPtr tensor_group(const GroupPtr& a, const GroupPtr& b) {
  if (nontrivial(a) && nontrivial(b))
    throw Error(ErrorKind::GroupMismatch,
                "tensor products are supported with a group on at most one side");
  return nontrivial(b) ? b : a;
}

Vec kron_vec(const ChainRing& r, const Vec& m, const Vec& n) {
  Vec out(m.size() * n.size());
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = 0; b < n.size(); ++b) out[a * n.size() + b] = r.mul(m[a], n[b]);
  return out;
}

Vec add_vec(const ChainRing& r, const Vec& u, const Vec& v) {
  Vec out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = r.add(u[i], v[i]);
  return out;
}

Vec scale_vec(const ChainRing& r, Elem c, const Vec& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = r.mul(c, v[i]);
  return out;
}

std::size_t index_of_element(const ChainRing& r, const Vec& v) {
  std::size_t idx = 0;
  for (std::size_t j = v.size(); j-- > 0;) idx = idx * r.modulus() + v[j];
  return idx;
}

std::string pair_name(const FiniteBundle& a, const FiniteBundle& b, std::size_t x, std::size_t y) {
  return "(" + a.point(x) + "," + b.point(y) + ")";
}

}  // namespace

GModule tensor_one_sided(const GModule& m, const GModule& n) {
  if (!(m.ring() == n.ring())) throw Error(ErrorKind::RingMismatch, "tensor of modules");
  const GroupPtr g = tensor_group(m.group(), n.group());
  const ChainRing& r = m.ring();
  const Mat im = Mat::identity(r, m.dim()), in = Mat::identity(r, n.dim());
  std::vector<Mat> acts;
  for (std::size_t e = 0; e < g->order(); ++e)
    acts.push_back(nontrivial(n.group()) ? Mat::kron(im, n.action(e))
                                         : Mat::kron(m.action(nontrivial(m.group()) ? e : 0), in));
  return GModule::from_element_actions(r, g, m.dim() * n.dim(), std::move(acts), false);
}

FiniteBundle bundle_tensor(const FiniteBundle& a, const FiniteBundle& b) {
  if (!(a.ring() == b.ring())) throw Error(ErrorKind::RingMismatch, "tensor of bundles");
  const GroupPtr g = tensor_group(a.group(), b.group());
  std::vector<std::string> pts;
  std::vector<GModule> fibers;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y) {
      pts.push_back(pair_name(a, b, x, y));
      fibers.push_back(tensor_one_sided(a.fiber(x), b.fiber(y)));
    }
  return FiniteBundle(a.ring(), g, std::move(pts), std::move(fibers));
}

TensorCommCheck tensorcomm_check(const FiniteBundle& a, const FiniteBundle& b) {
  const FiniteBundle t = bundle_tensor(a, b);
  const DirectSum sa = direct_sum(a), sb = direct_sum(b), st = direct_sum(t);
  GModule source = tensor_one_sided(sa.sum, sb.sum);
  Mat m(a.ring(), source.dim(), st.sum.dim());
  const std::size_t nb = sb.sum.dim();
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y) {
      const std::size_t dm = a.fiber(x).dim(), dn = b.fiber(y).dim();
      const std::size_t off = st.offsets[x * b.size() + y];
      for (std::size_t i = 0; i < dm; ++i)
        for (std::size_t j = 0; j < dn; ++j)
          m.at((sa.offsets[x] + i) * nb + sb.offsets[y] + j, off + i * dn + j) = 1;
    }
  ModuleHom map(std::move(source), st.sum, std::move(m));
  const bool bij = map.bijective();
  return {std::move(map), bij};
}

std::size_t element_count(const ChainRing& ring, std::size_t dim) {
  std::size_t c = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    if (c > std::numeric_limits<std::size_t>::max() / ring.modulus())
      return std::numeric_limits<std::size_t>::max();
    c *= ring.modulus();
  }
  return c;
}

Vec enumerate_element(const ChainRing& ring, std::size_t dim, std::size_t index) {
  Vec v(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    v[j] = index % ring.modulus();
    index /= ring.modulus();
  }
  return v;
}

PairMap pair_map_from_matrices(const FiniteBundle& a, const FiniteBundle& b,
                               const std::vector<std::size_t>& space_map,
                               const std::vector<Mat>& forms) {
  const ChainRing& r = a.ring();
  PairMap psi;
  psi.space_map = space_map;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y) {
      const std::size_t dm = a.fiber(x).dim(), dn = b.fiber(y).dim();
      const std::size_t cm = element_count(r, dm), cn = element_count(r, dn);
      if (cm > kMaxPairEnumeration / cn)
        throw Error(ErrorKind::EnumerationTooLarge, "pair " + pair_name(a, b, x, y));
      std::vector<Vec> vals;
      for (std::size_t i = 0; i < cm; ++i)
        for (std::size_t j = 0; j < cn; ++j)
          vals.push_back(times(kron_vec(r, enumerate_element(r, dm, i), enumerate_element(r, dn, j)),
                               forms.at(x * b.size() + y)));
      psi.values.push_back(std::move(vals));
    }
  return psi;
}

PairMap canonical_pair_map(const FiniteBundle& a, const FiniteBundle& b) {
  std::vector<std::size_t> sm;
  std::vector<Mat> forms;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y) {
      sm.push_back(x * b.size() + y);
      forms.push_back(Mat::identity(a.ring(), a.fiber(x).dim() * b.fiber(y).dim()));
    }
  return pair_map_from_matrices(a, b, sm, forms);
}

MiddleLinearFactorization middle_linear_check(const FiniteBundle& a, const FiniteBundle& b,
                                              const FiniteBundle& target, const PairMap& psi) {
  const ChainRing& r = a.ring();
  const FiniteBundle t = bundle_tensor(a, b);
  if (!(target.ring() == r)) throw Error(ErrorKind::RingMismatch, "middle-linear target");
  if (!same_group(target.group(), t.group()))
    throw Error(ErrorKind::GroupMismatch, "middle-linear target");
  const std::size_t npairs = a.size() * b.size();
  if (psi.space_map.size() != npairs || psi.values.size() != npairs)
    throw Error(ErrorKind::InvalidArgument,
                "pair map needs one entry per pair (" + std::to_string(npairs) + ")");

  MiddleLinearFactorization out{BundleMorphism::identity(t), 0, true};
  std::vector<Mat> forms;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y) {
      const std::size_t pr = x * b.size() + y;
      const std::string where = "pair " + pair_name(a, b, x, y);
      const GModule& m = a.fiber(x);
      const GModule& n = b.fiber(y);
      const std::size_t dm = m.dim(), dn = n.dim();
      const std::size_t cm = element_count(r, dm), cn = element_count(r, dn);
      if (cm > kMaxPairEnumeration / cn)
        throw Error(ErrorKind::EnumerationTooLarge,
                    where + " has more than " + std::to_string(kMaxPairEnumeration) +
                        " element pairs");
      const std::size_t z = psi.space_map[pr];
      if (z >= target.size()) throw Error(ErrorKind::InvalidArgument, where + " maps off the target");
      const GModule& zf = target.fiber(z);
      const auto& vals = psi.values[pr];
      if (vals.size() != cm * cn)
        throw Error(ErrorKind::InvalidArgument, where + " needs " + std::to_string(cm * cn) + " values");
      for (const auto& v : vals)
        if (v.size() != zf.dim())
          throw Error(ErrorKind::InvalidArgument, where + " has a value of the wrong length");
      auto at = [&](std::size_t i, std::size_t j) -> const Vec& { return vals[i * cn + j]; };

      std::vector<Vec> me, ne;
      for (std::size_t i = 0; i < cm; ++i) me.push_back(enumerate_element(r, dm, i));
      for (std::size_t j = 0; j < cn; ++j) ne.push_back(enumerate_element(r, dn, j));
      auto idx = [&](const Vec& v) { return index_of_element(r, v); };

      for (std::size_t i = 0; i < cm; ++i)
        for (std::size_t i2 = 0; i2 < cm; ++i2) {
          const std::size_t s = idx(add_vec(r, me[i], me[i2]));
          for (std::size_t j = 0; j < cn; ++j)
            if (at(s, j) != add_vec(r, at(i, j), at(i2, j)))
              throw Error(ErrorKind::NotMiddleLinear, where + " is not additive in the first variable");
        }
      for (std::size_t j = 0; j < cn; ++j)
        for (std::size_t j2 = 0; j2 < cn; ++j2) {
          const std::size_t s = idx(add_vec(r, ne[j], ne[j2]));
          for (std::size_t i = 0; i < cm; ++i)
            if (at(i, s) != add_vec(r, at(i, j), at(i, j2)))
              throw Error(ErrorKind::NotMiddleLinear, where + " is not additive in the second variable");
        }
      for (Elem c = 0; c < r.modulus(); ++c)
        for (std::size_t i = 0; i < cm; ++i)
          for (std::size_t j = 0; j < cn; ++j) {
            const Vec& lhs = at(idx(scale_vec(r, c, me[i])), j);
            if (lhs != at(i, idx(scale_vec(r, c, ne[j]))) || lhs != scale_vec(r, c, at(i, j)))
              throw Error(ErrorKind::NotMiddleLinear,
                          where + " is not balanced at r = " + std::to_string(c));
          }
      if (nontrivial(t.group())) {
        const bool left = nontrivial(m.group());
        for (auto g : t.group()->generators())
          for (std::size_t i = 0; i < cm; ++i)
            for (std::size_t j = 0; j < cn; ++j) {
              const Vec& moved = left ? at(idx(times(me[i], m.action(g))), j)
                                      : at(i, idx(times(ne[j], n.action(g))));
              if (moved != times(at(i, j), zf.action(g)))
                throw Error(ErrorKind::NotMiddleLinear, where + " is not G-linear");
            }
      }

      // F on the basis tensors e_a (x) e_b, then checked on every pure tensor.
      Mat f(r, dm * dn, zf.dim());
      for (std::size_t u = 0; u < dm; ++u)
        for (std::size_t v = 0; v < dn; ++v) {
          const Vec& val = at(element_count(r, u), element_count(r, v));
          for (std::size_t c = 0; c < zf.dim(); ++c) f.at(u * dn + v, c) = val[c];
        }
      std::vector<Vec> pure;
      for (std::size_t i = 0; i < cm; ++i)
        for (std::size_t j = 0; j < cn; ++j) {
          const Vec tv = kron_vec(r, me[i], ne[j]);
          if (times(tv, f) != at(i, j))
            throw Error(ErrorKind::NotMiddleLinear, where + " does not factor through the tensor");
          pure.push_back(tv);
          ++out.pairs_checked;
        }
      if (!is_surjective(Mat::from_vectors(r, dm * dn, pure))) out.pure_tensors_span = false;
      forms.push_back(std::move(f));
    }
  out.factor = BundleMorphism(t, target, psi.space_map, std::move(forms));
  return out;
}

}  // namespace profmod
