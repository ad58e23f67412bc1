#include "commands.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "profmod/bundle_tensor.hpp"
#include "profmod/error.hpp"
#include "profmod/mackey.hpp"

namespace profmod::cli {

namespace {

using Runner = std::function<void(const Document&, const Options&, Report&)>;

unsigned task_cutoff(const Document& doc, const Options& opt) {
  const json& t = doc.task();
  return t.contains("cutoff") ? static_cast<unsigned>(as_uint(t["cutoff"], "task.cutoff")) : opt.cutoff;
}

std::string task_name(const Document& doc, const std::string& key) {
  return as_string(require(doc.task(), key, "task"), join("task", key));
}

CoverKind other_cover(CoverKind k) {
  return k == CoverKind::spin ? CoverKind::full_basis : CoverKind::spin;
}

ojson dims_json(const FiniteBundle& b) {
  ojson d = ojson::array();
  for (const auto& f : b.fibers()) d.push_back(f.dim());
  return d;
}

ojson morphism_json(const BundleMorphism& f) {
  ojson j;
  ojson sm = ojson::array(), fm = ojson::array();
  for (std::size_t x = 0; x < f.source().size(); ++x) {
    sm.push_back(f.target().point(f.space_map(x)));
    fm.push_back(to_json(f.fiber_map(x)));
  }
  j["space_map"] = std::move(sm);
  j["fiber_maps"] = std::move(fm);
  return j;
}

ojson flags(const std::vector<bool>& v) {
  ojson a = ojson::array();
  for (bool b : v) a.push_back(b);
  return a;
}

// Sections of the cover split it and respect the action.
bool section_splits(const ProjectivityWitness& w) {
  return (w.section.matrix() * w.cover.epi.matrix()).is_identity();
}

// ---- mackey ------------------------------------------------------------------------

void run_mackey(const Document& doc, const Options&, Report& r) {
  const Subgroup& h = doc.task_subgroup("H");
  const Subgroup& k = doc.task_subgroup("K");
  const GModule& m = doc.task_module("M");
  const auto& G = *doc.group();
  std::optional<std::vector<std::size_t>> reps;
  if (doc.task().contains("reps")) {
    const json& rl = doc.task()["reps"];
    if (!rl.is_array()) throw InputError("task.reps", "expected a list");
    reps.emplace();
    for (std::size_t i = 0; i < rl.size(); ++i) {
      const std::string path = join("task.reps", i);
      auto x = G.index_of(parse_perm(rl[i], G.degree(), path));
      if (!x) throw InputError(path, "not an element of the group");
      reps->push_back(*x);
    }
  }
  MackeyReport rep = [&] {
    try {
      return mackey_verify(doc.ring(), h, k, m, reps);
    } catch (const Error& e) {
      throw InputError("task", e.what());
    }
  }();

  auto& res = r.results();
  res["lhs_dim"] = rep.lhs.dim();
  ojson rhs = ojson::array(), comps = ojson::array();
  for (const auto& c : rep.components) {
    rhs.push_back(c.dim);
    ojson e;
    e["representative"] = cycle_string(G.element(c.rep));
    e["intersection_order"] = c.intersection_order;
    e["index"] = c.index;
    e["dim"] = c.dim;
    e["well_defined"] = c.well_defined;
    e["proof_route"] = c.proof_route;
    comps.push_back(std::move(e));
  }
  res["rhs_dims"] = std::move(rhs);
  res["components"] = std::move(comps);
  res["witness"] = to_json(rep.map);

  r.check("balanced_relations", rep.well_defined);
  r.check("intertwiner", rep.intertwiner);
  r.check("bijective", rep.bijective);
  ojson dd;
  dd["lhs"] = rep.lhs.dim();
  dd["rhs"] = rep.rhs_sum.dim();
  r.check("dimensions", rep.dimensions_match, dd);
  r.check("component_routes", rep.proof_route);
  r.check("induction_as_tensor", rep.induction_identified);

  const auto dec = decompose_group_algebra(doc.ring(), h, k);
  ojson sizes = ojson::array();
  for (const auto& cell : dec.cosets.cells) sizes.push_back(cell.size());
  ojson cd;
  cd["cell_sizes"] = std::move(sizes);
  r.check("group_algebra_decomposition", dec.passed(), cd);
  bool hgk = true;
  for (auto g : dec.cosets.reps) hgk = hgk && hgk_factorization(doc.ring(), h, k, g).passed();
  r.check("hgk_factorizations", hgk);
}

// ---- homological commands -----------------------------------------------------------

void run_pd(const Document& doc, const Options& opt, Report& r) {
  const GModule& m = doc.task_module("module");
  const unsigned cutoff = task_cutoff(doc, opt);
  const ProjDim d = pd_bounded(m, cutoff, opt.cover);
  auto& res = r.results();
  res["dim"] = m.dim();
  res["cutoff"] = cutoff;
  res["pd"] = to_json(d);
  ojson det;
  det["pd"] = to_json(d);
  r.check("pd_zero_or_above_cutoff", d.is_above_cutoff() || d.value() == 0u, det);
  r.check("pd_zero_iff_projective", (d.value() == 0u) == is_projective(m, opt.cover).projective);
}

void run_projective(const Document& doc, const Options& opt, Report& r) {
  const GModule& m = doc.task_module("module");
  const auto p = is_projective(m, opt.cover);
  auto& res = r.results();
  res["dim"] = m.dim();
  res["projective"] = p.projective;
  if (p.witness) {
    res["cover_rank"] = p.witness->cover.generators.rows();
    res["section"] = to_json(p.witness->section.matrix());
    r.check("section_splits_cover", section_splits(*p.witness));
  }
  r.check("cover_independent", is_projective(m, other_cover(opt.cover)).projective == p.projective);
}

std::vector<unsigned> task_degrees(const Document& doc) {
  const json& t = doc.task();
  if (t.contains("degree")) return {static_cast<unsigned>(as_uint(t["degree"], "task.degree"))};
  if (!t.contains("degrees")) return {0, 1, 2};
  const json& dl = t["degrees"];
  if (!dl.is_array()) throw InputError("task.degrees", "expected a list");
  std::vector<unsigned> out;
  for (std::size_t i = 0; i < dl.size(); ++i)
    out.push_back(static_cast<unsigned>(as_uint(dl[i], join("task.degrees", i))));
  return out;
}

void run_derived(const Document& doc, const Options& opt, Report& r, bool tor) {
  const GModule& m = doc.task_module("M");
  const GModule& n = doc.task_module("N");
  const auto degrees = task_degrees(doc);
  auto dim = [&](unsigned i, CoverKind kind) {
    return tor ? tor_bounded(m, n, i, kind).dimension : ext_bounded(m, n, i, kind);
  };
  const bool m_proj = is_projective(m, opt.cover).projective;
  const bool n_proj = tor && is_projective(n, opt.cover).projective;
  ojson dims = ojson::object();
  bool vanish = true, agree = true;
  const bool cross = m.dim() * m.group()->order() <= 96;
  for (auto i : degrees) {
    const std::size_t v = dim(i, opt.cover);
    dims[std::to_string(i)] = v;
    if (i >= 1 && (m_proj || n_proj) && v != 0) vanish = false;
    if (cross && dim(i, other_cover(opt.cover)) != v) agree = false;
  }
  auto& res = r.results();
  res["dimensions"] = dims;
  res["M_projective"] = m_proj;
  if (tor) res["N_projective"] = n_proj;
  r.check("vanishes_on_projectives", vanish);
  if (cross) r.check("cover_independent", agree);
}

// ---- bundles -------------------------------------------------------------------------

void run_bundle_sum(const Document& doc, const Options& opt, Report& r) {
  const std::string name = task_name(doc, "bundle");
  const FiniteBundle& b = doc.bundle(name, "task.bundle");
  const DirectSum ds = direct_sum(b);
  auto& res = r.results();
  res["points"] = b.points();
  res["fiber_dims"] = dims_json(b);
  res["sum_dim"] = ds.sum.dim();
  res["offsets"] = ds.offsets;

  r.check("injections_injective", std::all_of(ds.injections.begin(), ds.injections.end(),
                                              [](const ModuleHom& f) { return f.injective(); }));
  std::vector<Mat> maps;
  for (const auto& f : ds.injections) maps.push_back(f.matrix());
  const auto fac = factor_through_sum(b, ds.sum, maps);
  r.check("universal_factorization", fac.factor && fac.unique && fac.factor->matrix().is_identity());
  if (b.size() <= kMaxCosheafPoints) {
    const auto c = cosheaf_check(b);
    ojson d;
    d["subsets"] = c.subsets;
    d["partitions"] = c.partitions;
    r.check("cosheaf", c.passed, d);
  }
  if (doc.task().contains("restrict_to")) {
    const Subgroup& h = doc.task_subgroup("restrict_to");
    r.check("restriction_commutes_with_sum", restriction_commutes_with_sum(b, h));
  }
  if (b.ring().is_field()) {
    const unsigned cutoff = task_cutoff(doc, opt);
    ProjDim fiberwise = ProjDim::exactly(0);
    ojson pds = ojson::array();
    for (const auto& f : b.fibers()) {
      const ProjDim d = pd_bounded(f, cutoff, opt.cover);
      pds.push_back(to_json(d));
      fiberwise = max(fiberwise, d);
    }
    const ProjDim total = pd_bounded(ds.sum, cutoff, opt.cover);
    res["fiber_pds"] = std::move(pds);
    res["sum_pd"] = to_json(total);
    ojson d;
    d["sum"] = to_json(total);
    d["fiberwise_max"] = to_json(fiberwise);
    r.check("pd_of_sum_is_fiberwise_max", total == fiberwise, d);
  }
}

void run_bundle_tensor(const Document& doc, const Options&, Report& r) {
  const FiniteBundle& a = doc.bundle(task_name(doc, "A"), "task.A");
  const FiniteBundle& b = doc.bundle(task_name(doc, "B"), "task.B");
  const FiniteBundle t = [&] {
    try {
      return bundle_tensor(a, b);
    } catch (const Error& e) {
      throw InputError("task", e.what());
    }
  }();
  const auto tc = tensorcomm_check(a, b);
  auto& res = r.results();
  res["points"] = t.points();
  res["fiber_dims"] = dims_json(t);
  res["comparison"] = to_json(tc.map.matrix());
  r.check("tensorcomm_bijective", tc.bijective);

  PairMap psi;
  FiniteBundle target = t;
  if (doc.task().contains("middle_linear")) {
    const json& ml = doc.task()["middle_linear"];
    const std::string path = "task.middle_linear";
    target = doc.bundle(as_string(require(ml, "target", path), join(path, "target")), join(path, "target"));
    const json& sm = require(ml, "space_map", path);
    const json& fm = require(ml, "forms", path);
    const std::size_t pairs = a.size() * b.size();
    if (!sm.is_array() || sm.size() != pairs)
      throw InputError(join(path, "space_map"), "expected one target point per pair");
    if (!fm.is_array() || fm.size() != pairs)
      throw InputError(join(path, "forms"), "expected one matrix per pair");
    std::vector<std::size_t> space;
    std::vector<Mat> forms;
    for (std::size_t q = 0; q < pairs; ++q) {
      const std::string pp = join(join(path, "space_map"), q);
      const std::string y = as_string(sm[q], pp);
      auto yi = target.index_of(y);
      if (!yi) throw InputError(pp, "no point '" + y + "' in the target");
      space.push_back(*yi);
      forms.push_back(parse_matrix(fm[q], doc.ring(), t.fiber(q).dim(), target.fiber(*yi).dim(),
                                   join(join(path, "forms"), q)));
    }
    psi = pair_map_from_matrices(a, b, space, forms);
  } else {
    psi = canonical_pair_map(a, b);
  }
  try {
    const auto f = middle_linear_check(a, b, target, psi);
    ojson d;
    d["pairs_checked"] = f.pairs_checked;
    r.check("middle_linear_factorization", true, d);
    r.check("pure_tensors_span", f.pure_tensors_span);
    res["factor"] = morphism_json(f.factor);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotMiddleLinear) throw;
    ojson d;
    d["reason"] = e.what();
    r.check("middle_linear_factorization", false, d);
  }
}

void run_cosheaf(const Document& doc, const Options&, Report& r) {
  const FiniteBundle& b = doc.bundle(task_name(doc, "bundle"), "task.bundle");
  const auto c = [&] {
    try {
      return cosheaf_check(b);
    } catch (const Error& e) {
      throw InputError("task.bundle", e.what());
    }
  }();
  auto& res = r.results();
  res["points"] = b.points();
  res["subsets"] = c.subsets;
  res["partitions"] = c.partitions;
  r.check("partition_maps_bijective", c.passed);
  if (b.size() > kMaxTablePoints) return;
  const CosectionTable table = bundle_to_cosheaf(b);
  try {
    check_cosheaf_table(table);
    r.check("table_axioms", true);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotACosheaf) throw;
    ojson d;
    d["reason"] = e.what();
    r.check("table_axioms", false, d);
    return;
  }
  const FiniteBundle back = cosheaf_to_bundle(table);
  r.check("costalks_recover_bundle", back == b);
  r.check("tables_canonically_isomorphic", tables_canonically_isomorphic(table, bundle_to_cosheaf(back)));
}

// ---- towers -----------------------------------------------------------------------------

void limit_checks(const Tower& t, Report& r, const std::string& prefix) {
  const auto lr = tower_limit_checks(t);
  const auto all = [](const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); };
  ojson d;
  d["per_transition"] = flags(lr.sums_surjective);
  r.check(prefix + "sums_surjective", all(lr.sums_surjective), d);
  ojson s;
  s["per_transition"] = flags(lr.squares_commute);
  r.check(prefix + "squares_commute", all(lr.squares_commute), s);
  r.check(prefix + "composites_functorial", lr.composites_functorial);
  ojson l;
  l["limit_log_size"] = lr.limit_log_size;
  l["top_log_size"] = lr.top_log_size;
  r.check(prefix + "limit_is_top", lr.limit_is_top, l);
}

std::optional<Tower> load_tower(const Document& doc, const std::string& path, Report& r) {
  const std::string name = as_string(require(doc.task(), "tower", "task"), path);
  try {
    Tower t = doc.tower(name, path);
    r.check("transitions_surjective", true);
    return t;
  } catch (const Error& e) {
    ojson d;
    d["reason"] = e.what();
    r.check("transitions_surjective", false, d);
    return std::nullopt;
  }
}

void run_tower_check(const Document& doc, const Options&, Report& r) {
  auto t = load_tower(doc, "task.tower", r);
  if (!t) return;
  auto& res = r.results();
  res["depth"] = t->depth();
  ojson sizes = ojson::array();
  for (std::size_t j = 0; j <= t->depth(); ++j) sizes.push_back(t->level(j).size());
  res["level_points"] = std::move(sizes);
  limit_checks(*t, r, "");
}

void run_factor(const Document& doc, const Options&, Report& r) {
  auto t = load_tower(doc, "task.tower", r);
  if (!t) return;
  const FiniteBundle& target = doc.bundle(task_name(doc, "target"), "task.target");
  const BundleMorphism& phi = doc.morphism(task_name(doc, "phi"), "task.phi");
  if (!(phi.source() == t->top())) throw InputError("task.phi", "source is not the top level of the tower");
  if (!(phi.target() == target)) throw InputError("task.phi", "target is not task.target");
  std::optional<std::pair<std::size_t, std::size_t>> range;
  if (doc.task().contains("range")) {
    const json& rg = doc.task()["range"];
    if (!rg.is_array() || rg.size() != 2) throw InputError("task.range", "expected [lo, hi]");
    range.emplace(as_uint(rg[0], "task.range[0]"), as_uint(rg[1], "task.range[1]"));
    if (range->first > range->second || range->second > t->depth())
      throw InputError("task.range", "expected 0 <= lo <= hi <= depth");
  }
  try {
    const auto lf = factor_through_level(*t, target, phi, range);
    auto& res = r.results();
    res["level"] = lf.level;
    res["factor"] = morphism_json(lf.factor);
    r.check("composite_equals_phi", compose(t->projection(t->depth(), lf.level), lf.factor) == phi);
    bool minimal = true;
    for (std::size_t k = range ? range->first : 0; k < lf.level; ++k)
      if (factor_at_level(*t, target, phi, k)) minimal = false;
    r.check("least_level", minimal);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoFactorization) throw;
    ojson d;
    d["reason"] = e.what();
    r.check("factorization_exists", false, d);
  }
}

// ---- G-sets and trees -------------------------------------------------------------------

std::vector<std::vector<std::uint32_t>> parse_images(const json& v, std::size_t gens, std::size_t points,
                                                     const std::string& path) {
  if (!v.is_array() || v.size() != gens)
    throw InputError(path, "expected one image list per group generator (" + std::to_string(gens) + ")");
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t i = 0; i < gens; ++i) {
    const std::string ip = join(path, i);
    if (!v[i].is_array() || v[i].size() != points)
      throw InputError(ip, "expected " + std::to_string(points) + " images");
    std::vector<std::uint32_t> row;
    for (std::size_t x = 0; x < points; ++x) {
      const auto y = as_uint(v[i][x], join(ip, x));
      if (y >= points) throw InputError(join(ip, x), "image out of range");
      row.push_back(static_cast<std::uint32_t>(y));
    }
    out.push_back(std::move(row));
  }
  return out;
}

void run_meldec(const Document& doc, const Options&, Report& r) {
  const json& gs = require(doc.task(), "gspace", "task");
  const std::string path = "task.gspace";
  const GroupPtr& g = doc.group();
  const GSpace space = [&] {
    if (gs.contains("cosets")) return GSpace::cosets(doc.subgroup(as_string(gs["cosets"], join(path, "cosets")), join(path, "cosets")));
    const std::size_t n = as_uint(require(gs, "points", path), join(path, "points"));
    const auto images = parse_images(require(gs, "images", path), g->generators().size(), n, join(path, "images"));
    try {
      return GSpace(g, n, images);
    } catch (const Error& e) {
      throw InputError(join(path, "images"), e.what());
    }
  }();
  const auto dec = perm_module(doc.ring(), space);
  auto& res = r.results();
  res["points"] = space.points();
  ojson orbs = ojson::array();
  std::vector<int> seen(space.points(), 0);
  bool dims = true, images = true;
  for (const auto& s : dec.summands) {
    ojson o;
    o["points"] = s.orbit.points;
    o["representative"] = s.orbit.representative;
    o["stabilizer_order"] = s.orbit.stabilizer.order();
    o["induced_dim"] = s.induced.dim();
    orbs.push_back(std::move(o));
    for (auto x : s.orbit.points) ++seen[x];
    if (s.induced.dim() != s.orbit.points.size()) dims = false;
    // The image of the embedding is spanned by the orbit's points.
    const Mat& e = s.embedding.matrix();
    if (!s.embedding.injective()) images = false;
    for (std::size_t i = 0; i < e.rows(); ++i)
      for (std::size_t x = 0; x < e.cols(); ++x)
        if (e(i, x) != 0 && !std::binary_search(s.orbit.points.begin(), s.orbit.points.end(), x)) images = false;
  }
  res["orbits"] = std::move(orbs);
  r.check("orbits_partition", std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
  r.check("orbit_stabilizer", dims);
  r.check("embeddings_onto_orbits", images);
  r.check("sum_of_orbit_modules", dec.bijective);
}

void run_tree(const Document& doc, const Options& opt, Report& r) {
  const json& gr = require(doc.task(), "graph", "task");
  const std::string path = "task.graph";
  FiniteGraph graph;
  graph.group = doc.raw().contains("group") ? doc.group() : trivial_group();
  graph.vertices = as_uint(require(gr, "vertices", path), join(path, "vertices"));
  const json& el = require(gr, "edges", path);
  if (!el.is_array()) throw InputError(join(path, "edges"), "expected a list");
  for (std::size_t i = 0; i < el.size(); ++i) {
    const std::string ep = join(join(path, "edges"), i);
    if (!el[i].is_array() || el[i].size() != 2) throw InputError(ep, "expected [tail, head]");
    const auto t = as_uint(el[i][0], join(ep, 0)), h = as_uint(el[i][1], join(ep, 1));
    if (t >= graph.vertices || h >= graph.vertices) throw InputError(ep, "vertex out of range");
    graph.edges.emplace_back(t, h);
  }
  const std::size_t gens = graph.group->generators().size();
  const json empty = json::array();
  graph.vertex_images = parse_images(gens ? require(gr, "vertex_images", path) : gr.value("vertex_images", empty),
                                     gens, graph.vertices, join(path, "vertex_images"));
  graph.edge_images = parse_images(gens ? require(gr, "edge_images", path) : gr.value("edge_images", empty), gens,
                                   graph.edges.size(), join(path, "edge_images"));
  std::optional<GModule> m;
  if (doc.task().contains("module")) m = doc.task_module("module");
  const auto rep = [&] {
    try {
      return augmentation_resolution_check(doc.ring(), graph, m, task_cutoff(doc, opt));
    } catch (const Error& e) {
      throw InputError(path, e.what());
    }
  }();
  auto& res = r.results();
  res["edge_dim"] = rep.edge_dim;
  res["vertex_dim"] = rep.vertex_dim;
  res["boundary"] = to_json(rep.boundary);
  if (rep.pd_vertices) res["pd_vertices"] = to_json(*rep.pd_vertices);
  if (rep.pd_edges) res["pd_edges"] = to_json(*rep.pd_edges);
  if (rep.pd_module) res["pd_module"] = to_json(*rep.pd_module);
  if (rep.derived_bound) res["derived_bound"] = *rep.derived_bound;
  auto exact = [&](const std::string& prefix, const ExactnessChecks& e) {
    r.check(prefix + "boundary_injective", e.boundary_injective);
    r.check(prefix + "composite_zero", e.composite_zero);
    r.check(prefix + "image_equals_kernel", e.image_equals_kernel);
    r.check(prefix + "augmentation_surjective", e.augmentation_surjective);
  };
  exact("", rep.plain);
  exact("tensored_", rep.tensored);
  r.check("pd_bound_respected", rep.bound_respected);
}

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> table = {
      {"mackey", run_mackey},
      {"pd", run_pd},
      {"projective", run_projective},
      {"tor", [](const Document& d, const Options& o, Report& r) { run_derived(d, o, r, true); }},
      {"ext", [](const Document& d, const Options& o, Report& r) { run_derived(d, o, r, false); }},
      {"bundle-sum", run_bundle_sum},
      {"bundle-tensor", run_bundle_tensor},
      {"cosheaf-check", run_cosheaf},
      {"tower-check", run_tower_check},
      {"factor", run_factor},
      {"meldec", run_meldec},
      {"tree-resolution", run_tree},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& document_commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, _] : runners()) v.push_back(name);
    return v;
  }();
  return names;
}

Report run_document_command(const std::string& command, const Document& doc, const Options& opt) {
  Report r(command, ojson(doc.task()));
  runners().at(command)(doc, opt, r);
  r.set_reproduction(ojson(doc.raw()));
  return r;
}

Report run_exproj(const Options& opt) {
  ojson task;
  task["p"] = opt.p;
  task["dim"] = opt.dim;
  task["depth"] = opt.depth;
  Report r("exproj", task);
  if (opt.depth == 0) throw InputError("--depth", "must be at least 1");
  const ChainRing ring = [&] {
    try {
      return ChainRing(opt.p);
    } catch (const Error& e) {
      throw InputError("--p", e.what());
    }
  }();
  const GModule p = plain_module(ring, opt.dim);
  const auto towers = exproj_tower(p, opt.depth);
  const auto obs = [&] {
    try {
      return splitting_obstruction(p, opt.depth);
    } catch (const Error& e) {
      throw InputError("exproj", e.what());
    }
  }();

  auto& res = r.results();
  res["splittings"] = obs.splittings;
  res["every_level_splits"] = obs.every_level_splits;
  res["compatible_family"] = obs.compatible_family;
  if (obs.first_failure) res["first_failure"] = {obs.first_failure->first, obs.first_failure->second};
  if (obs.witness_point) res["witness_point"] = *obs.witness_point;
  if (obs.every_level_splits && !obs.compatible_family && obs.witness_point)
    res["summary"] = "each level splits; no compatible family; witness point " + *obs.witness_point;
  else if (obs.compatible_family)
    res["summary"] = "each level splits; a compatible family exists";
  else
    res["summary"] = "some level does not split";

  limit_checks(towers.m, r, "m_");
  limit_checks(towers.n, r, "n_");
  bool commute = true;
  for (std::size_t j = 0; j < opt.depth; ++j)
    if (!(compose(towers.epi[j + 1], towers.n.transition(j)) == compose(towers.m.transition(j), towers.epi[j])))
      commute = false;
  r.check("epimorphisms_commute", commute);
  r.check("every_level_splits", obs.every_level_splits);
  ojson d;
  d["note"] = obs.note;
  // Only the zero fiber admits a compatible family.
  r.check("compatible_family_iff_zero", obs.compatible_family == (opt.dim == 0), d);
  ojson repro;
  repro["argv"] = {"exproj", "--p", std::to_string(opt.p), "--dim", std::to_string(opt.dim), "--depth",
                   std::to_string(opt.depth)};
  r.set_reproduction(repro);
  return r;
}

}  // namespace profmod::cli
