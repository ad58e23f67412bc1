#include "profmod/homology.hpp"

#include <numeric>
#include <string>

#include "profmod/error.hpp"

namespace profmod {

void require_field(const ChainRing& ring, const char* operation) {
  if (!ring.is_field())
    throw Error(ErrorKind::UnsupportedRing,
                std::string(operation) + " needs field coefficients, got " + ring.name());
}

std::string ProjDim::to_string() const {
  return value_ ? std::to_string(*value_) : std::string("ABOVE_CUTOFF");
}

ProjDim max(const ProjDim& a, const ProjDim& b) {
  if (a.is_above_cutoff() || b.is_above_cutoff()) return ProjDim::above_cutoff();
  return ProjDim::exactly(std::max(*a.value(), *b.value()));
}

Mat spin_generators(const GModule& m) {
  const auto& R = m.ring();
  const std::size_t d = m.dim();
  const std::size_t n = m.group()->order();
  Mat span(R, 0, d);
  std::vector<Vec> chosen;
  for (std::size_t i = 0; i < d && log_size(span) < d * R.k(); ++i) {
    Vec e(d, 0);
    e[i] = 1;
    if (in_row_span(span, e)) continue;
    chosen.push_back(e);
    Mat orbit(R, n, d);
    for (std::size_t x = 0; x < n; ++x) {
      auto src = m.action(x).row(i);
      std::copy(src.begin(), src.end(), orbit.row(x).begin());
    }
    span = howell_form(Mat::vstack(span, orbit));
  }
  return Mat::from_vectors(R, d, chosen);
}

FreeCover free_cover(const GModule& m, CoverKind kind) {
  const auto& R = m.ring();
  const std::size_t n = m.group()->order();
  Mat gens = kind == CoverKind::spin ? spin_generators(m) : Mat::identity(R, m.dim());
  const std::size_t t = gens.rows();
  GModule f = GModule::free(R, m.group(), t);
  Mat epi(R, t * n, m.dim());
  for (std::size_t j = 0; j < t; ++j) {
    const Mat g = Mat::row_vector(R, gens.row(j));
    for (std::size_t x = 0; x < n; ++x) {
      const Mat img = g * m.action(x);
      std::copy(img.row(0).begin(), img.row(0).end(), epi.row(j * n + x).begin());
    }
  }
  ModuleHom hom(f, m, std::move(epi));
  return {std::move(gens), std::move(f), std::move(hom)};
}

ProjectivityResult is_projective(const GModule& m, CoverKind kind) {
  require_field(m.ring(), "is_projective");
  const auto& R = m.ring();
  const auto& G = *m.group();
  FreeCover cover = free_cover(m, kind);
  const std::size_t d = m.dim(), t = cover.generators.rows(), n = G.order();
  if (d == 0) {
    ModuleHom section(m, cover.free, Mat(R, 0, 0));
    return {true, ProjectivityWitness{std::move(cover), std::move(section)}};
  }

  // Unknown L[a][j] at a*t + j; equation (r, c) at r*d + c:
  // sum_x rho(x^-1)[r][a] * (Gm rho(x))[j][c] = delta_rc.
  Mat sys(R, d * t, d * d);
  for (std::size_t x = 0; x < n; ++x) {
    const Mat& pinv = m.action(G.inv(x));
    const Mat q = cover.generators * m.action(x);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t a = 0; a < d; ++a) {
        const Elem w = pinv(r, a);
        if (w == 0) continue;
        for (std::size_t j = 0; j < t; ++j)
          for (std::size_t c = 0; c < d; ++c) {
            const Elem v = q(j, c);
            if (v == 0) continue;
            Elem& cell = sys.at(a * t + j, r * d + c);
            cell = R.add(cell, R.mul(w, v));
          }
      }
  }
  Vec rhs(d * d, 0);
  for (std::size_t r = 0; r < d; ++r) rhs[r * d + r] = 1;
  SolutionSet sol = solve_affine(sys, rhs);
  if (!sol.solvable()) return {false, std::nullopt};

  const Mat lam = unflatten(*sol.particular, R, d, t);
  Mat s(R, d, t * n);
  for (std::size_t x = 0; x < n; ++x) {
    const Mat part = m.action(G.inv(x)) * lam;
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t j = 0; j < t; ++j) s.at(a, j * n + x) = part(a, j);
  }
  ModuleHom section(m, cover.free, std::move(s));
  return {true, ProjectivityWitness{std::move(cover), std::move(section)}};
}

Syzygy syzygy(const GModule& m, CoverKind kind) {
  require_field(m.ring(), "syzygy");
  const auto& R = m.ring();
  const auto& G = *m.group();
  FreeCover cover = free_cover(m, kind);
  const std::size_t n = G.order();
  Mat ker = left_kernel(cover.epi.matrix());
  const auto piv = pivots(ker);
  std::vector<Mat> actions;
  actions.reserve(n);
  for (std::size_t g = 0; g < n; ++g) {
    const std::size_t ginv = G.inv(g);
    Mat c(R, ker.rows(), ker.rows());
    // Over a field the kernel is in RREF, so coordinates are the entries in
    // the pivot columns; (v g)[(j, y)] = v[(j, y g^-1)].
    for (std::size_t s = 0; s < piv.size(); ++s) {
      const std::size_t j = piv[s].col / n, y = piv[s].col % n;
      const std::size_t src = j * n + G.mul(y, ginv);
      for (std::size_t r = 0; r < ker.rows(); ++r) c.at(r, s) = ker(r, src);
    }
    actions.push_back(std::move(c));
  }
  GModule omega =
      GModule::from_element_actions(R, m.group(), ker.rows(), std::move(actions), false);
  return {std::move(cover), std::move(ker), std::move(omega)};
}

ProjDim pd_bounded(const GModule& m, unsigned cutoff, CoverKind kind) {
  require_field(m.ring(), "pd_bounded");
  GModule cur = m;
  for (unsigned i = 0; i <= cutoff; ++i) {
    if (is_projective(cur, kind).projective) return ProjDim::exactly(i);
    if (i == cutoff) break;
    cur = syzygy(cur, kind).module;
  }
  return ProjDim::above_cutoff();
}

Quotient coinvariants(const GModule& m) {
  const auto& R = m.ring();
  Mat rel(R, 0, m.dim());
  const Mat id = Mat::identity(R, m.dim());
  for (auto s : m.group()->generators()) rel = Mat::vstack(rel, m.action(s) - id);
  return free_quotient(rel);
}

namespace {

GModule iterated_syzygy(const GModule& m, unsigned times, CoverKind kind) {
  GModule cur = m;
  for (unsigned i = 0; i < times; ++i) cur = syzygy(cur, kind).module;
  return cur;
}

}  // namespace

TorResult tor_bounded(const GModule& m, const GModule& n, unsigned i, CoverKind kind) {
  require_field(m.ring(), "tor_bounded");
  require_compatible(m, n);
  if (i == 0) {
    Quotient q = coinvariants(tensor_diag(m, n));
    return {q.dim, std::move(q.section)};
  }
  const GModule l = iterated_syzygy(m, i - 1, kind);
  Syzygy s = syzygy(l, kind);
  const Quotient qo = coinvariants(tensor_diag(s.module, n));
  const Quotient qf = coinvariants(tensor_diag(s.cover.free, n));
  const Mat map =
      qo.section * Mat::kron(s.kernel, Mat::identity(m.ring(), n.dim())) * qf.projection;
  Mat ker = left_kernel(map);
  return {ker.rows(), std::move(ker)};
}

std::size_t ext_bounded(const GModule& m, const GModule& n, unsigned i, CoverKind kind) {
  require_field(m.ring(), "ext_bounded");
  require_compatible(m, n);
  if (i == 0) return hom_basis(m, n).size();
  const auto& R = m.ring();
  const GModule l = iterated_syzygy(m, i - 1, kind);
  Syzygy s = syzygy(l, kind);
  const std::size_t hom_omega = hom_basis(s.module, n).size();
  const std::size_t order = m.group()->order();
  const std::size_t t = s.cover.generators.rows();
  const std::size_t dk = s.kernel.rows(), dn = n.dim();
  if (dk == 0 || dn == 0) return hom_omega;

  // phi_{j,b}: e_(j,x) |-> row b of rho_N(x), restricted along the kernel.
  std::vector<Vec> restricted;
  for (std::size_t j = 0; j < t; ++j)
    for (std::size_t b = 0; b < dn; ++b) {
      Mat phi(R, order, dn);
      for (std::size_t x = 0; x < order; ++x) {
        auto src = n.action(x).row(b);
        std::copy(src.begin(), src.end(), phi.row(x).begin());
      }
      restricted.push_back(flatten(s.kernel.block(0, j * order, dk, order) * phi));
    }
  const unsigned rank = log_size(howell_form(Mat::from_vectors(R, dk * dn, restricted)));
  return hom_omega - rank;
}

// ---- trees ---------------------------------------------------------------------

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

ExactnessChecks check_exact(const Mat& boundary, const Mat& augmentation) {
  ExactnessChecks c;
  c.boundary_injective = is_injective(boundary);
  c.composite_zero = (boundary * augmentation).is_zero();
  c.image_equals_kernel =
      rank_profile(boundary).image_log == rank_profile(augmentation).kernel_log;
  c.augmentation_surjective = is_surjective(augmentation);
  return c;
}

}  // namespace

TreeResolutionReport augmentation_resolution_check(const ChainRing& ring, const FiniteGraph& graph,
                                                   const std::optional<GModule>& m,
                                                   unsigned cutoff) {
  const std::size_t nv = graph.vertices, ne = graph.edges.size();
  for (const auto& [a, b] : graph.edges)
    if (a >= nv || b >= nv) throw Error(ErrorKind::InvalidArgument, "edge endpoint out of range");
  if (nv == 0 || ne + 1 != nv)
    throw Error(ErrorKind::NotATree, std::to_string(nv) + " vertices and " + std::to_string(ne) +
                                         " edges");
  std::vector<std::size_t> parent(nv);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (const auto& [a, b] : graph.edges) parent[find_root(parent, a)] = find_root(parent, b);
  for (std::size_t v = 0; v < nv; ++v)
    if (find_root(parent, v) != find_root(parent, 0))
      throw Error(ErrorKind::NotATree, "graph is disconnected");

  const GSpace vspace(graph.group, nv, graph.vertex_images);
  const GSpace espace(graph.group, ne, graph.edge_images);
  for (std::size_t j = 0; j < graph.edge_images.size(); ++j)
    for (std::size_t e = 0; e < ne; ++e) {
      const auto [t, h] = graph.edges[e];
      const auto [t2, h2] = graph.edges[graph.edge_images[j][e]];
      const std::size_t vt = graph.vertex_images[j][t], vh = graph.vertex_images[j][h];
      if (vt == t2 && vh == h2) continue;
      const std::string where = "generator " + std::to_string(j) + " on edge " + std::to_string(e);
      if (vt == h2 && vh == t2) {
        if (ring.modulus() == 2) continue;
        throw Error(ErrorKind::ActionNotSimplicial,
                    where + " reverses the edge; only allowed in characteristic 2");
      }
      throw Error(ErrorKind::ActionNotSimplicial, where + " does not preserve incidence");
    }

  TreeResolutionReport rep{ne, nv, Mat(ring, ne, nv), Mat(ring, nv, 1), {}, {}, {}, {}, {}, {}, true};
  for (std::size_t e = 0; e < ne; ++e) {
    const auto [t, h] = graph.edges[e];
    rep.boundary.at(e, h) = ring.add(rep.boundary(e, h), 1 % ring.modulus());
    rep.boundary.at(e, t) = ring.sub(rep.boundary(e, t), 1 % ring.modulus());
  }
  for (std::size_t v = 0; v < nv; ++v) rep.augmentation.at(v, 0) = 1 % ring.modulus();

  const GModule rv = GModule::permutation(ring, vspace);
  const GModule re = GModule::permutation(ring, espace);
  const GModule trivial = GModule::trivial(ring, graph.group);
  // Both maps must be G-linear; the constructors throw otherwise.
  ModuleHom(re, rv, rep.boundary);
  ModuleHom(rv, trivial, rep.augmentation);
  rep.plain = check_exact(rep.boundary, rep.augmentation);

  const GModule mod = m ? *m : trivial;
  require_compatible(mod, trivial);
  const Mat id = Mat::identity(ring, mod.dim());
  rep.tensored = check_exact(Mat::kron(id, rep.boundary), Mat::kron(id, rep.augmentation));

  if (ring.is_field()) {
    rep.pd_vertices = pd_bounded(tensor_diag(mod, rv), cutoff);
    rep.pd_edges = pd_bounded(tensor_diag(mod, re), cutoff);
    rep.pd_module = pd_bounded(mod, cutoff);
    if (rep.pd_vertices->value() == 0u && rep.pd_edges->value() == 0u) {
      rep.derived_bound = 0 + 1;
      rep.bound_respected = !rep.pd_module->is_above_cutoff() &&
                            *rep.pd_module->value() <= *rep.derived_bound;
    }
  }
  return rep;
}

}  // namespace profmod
