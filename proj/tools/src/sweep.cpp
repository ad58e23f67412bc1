// Seeded sweep suites. Case i draws from its own generator, seeded from
// (seed, suite, i), so `--case i` replays one case exactly.

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "commands.hpp"
#include "profmod/bundle_tensor.hpp"
#include "profmod/catalog.hpp"
#include "profmod/error.hpp"
#include "profmod/mackey.hpp"

namespace profmod::cli {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t case_seed(std::uint64_t seed, const std::string& suite, std::size_t index) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : suite) h = (h ^ c) * 0x100000001b3ULL;
  return splitmix(seed ^ splitmix(h + index));
}

struct CaseOutcome {
  std::vector<std::pair<std::string, bool>> checks;
  ojson detail = ojson::object();
  ojson document;  // a single-command input reproducing the case, if any

  void check(const std::string& name, bool ok) { checks.emplace_back(name, ok); }
};

struct Suite {
  std::size_t count = 0;
  std::function<CaseOutcome(std::size_t, Rng&)> run;
};

ojson base_document(const ChainRing& ring, const GroupPtr& g) {
  ojson doc;
  doc["ring"] = ring_json(ring);
  if (g->order() > 1) doc["group"] = group_json(*g);
  return doc;
}

// ---- mackey-small -------------------------------------------------------------------

Suite mackey_small() {
  struct Case {
    std::size_t group, h, k;
    std::uint64_t p;
    int kind;  // 0 trivial, 1 regular, 2 random dim 2
  };
  struct State {
    std::vector<NamedGroup> groups;
    std::vector<std::vector<Subgroup>> subgroups;
    std::vector<Case> cases;
  };
  auto st = std::make_shared<State>();
  st->groups = builtin_groups(12);
  for (std::size_t gi = 0; gi < st->groups.size(); ++gi) {
    st->subgroups.push_back(all_subgroups(st->groups[gi].group));
    const std::size_t n = st->subgroups.back().size();
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t k = 0; k < n; ++k)
        for (std::uint64_t p : {2, 3})
          for (int kind = 0; kind < 3; ++kind) st->cases.push_back({gi, h, k, p, kind});
  }
  Suite s;
  s.count = st->cases.size();
  s.run = [st](std::size_t i, Rng& rng) {
    const Case& c = st->cases[i];
    const auto& g = st->groups[c.group];
    const Subgroup& h = st->subgroups[c.group][c.h];
    const Subgroup& k = st->subgroups[c.group][c.k];
    const ChainRing ring(c.p);
    const GModule m = c.kind == 0   ? GModule::trivial(ring, h.group())
                      : c.kind == 1 ? GModule::regular(ring, h.group())
                                    : random_dim2_module(ring, h.group(), rng);
    CaseOutcome out;
    out.detail["group"] = g.name;
    out.detail["H_order"] = h.order();
    out.detail["K_order"] = k.order();
    out.detail["p"] = c.p;
    out.detail["module"] = c.kind == 0 ? "trivial" : c.kind == 1 ? "regular" : "random_dim2";
    const auto rep = mackey_verify(ring, h, k, m);
    out.check("mackey_verify", rep.passed());
    if (c.kind == 0) {
      const auto dec = decompose_group_algebra(ring, h, k);
      out.check("group_algebra_decomposition", dec.passed());
      bool ok = true;
      for (auto x : dec.cosets.reps) ok = ok && hgk_factorization(ring, h, k, x).passed();
      out.check("hgk_factorizations", ok);
    }
    ojson doc = base_document(ring, g.group);
    doc["group"] = group_json(*g.group);
    doc["subgroups"]["H"] = subgroup_json(h);
    doc["subgroups"]["K"] = subgroup_json(k);
    doc["modules"]["M"] = module_json(m, "H");
    doc["task"] = {{"H", "H"}, {"K", "K"}, {"M", "M"}};
    out.document = std::move(doc);
    return out;
  };
  return s;
}

// ---- impcorr -------------------------------------------------------------------------

std::vector<NamedGroup> nontrivial_groups(std::size_t max_order) {
  auto gs = builtin_groups(max_order);
  gs.erase(std::remove_if(gs.begin(), gs.end(), [](const NamedGroup& g) { return g.group->order() == 1; }),
           gs.end());
  return gs;
}

Suite impcorr(unsigned cutoff, CoverKind cover) {
  Suite s;
  s.count = 30;
  s.run = [cutoff, cover](std::size_t, Rng& rng) {
    const auto groups = nontrivial_groups(8);
    const auto& g = groups[rng.below(groups.size())];
    const ChainRing ring(rng.coin() ? 3 : 2);
    const std::size_t n = 1 + rng.below(3);
    std::vector<std::string> pts;
    std::vector<GModule> fibers;
    for (std::size_t x = 0; x < n; ++x) {
      pts.push_back("x" + std::to_string(x));
      const auto pick = x == 0 ? 0 : rng.below(3);
      if (pick == 0) fibers.push_back(GModule::free(ring, g.group, 1));
      else if (pick == 1) fibers.push_back(GModule::trivial(ring, g.group));
      else fibers.push_back(random_module(ring, g.group, rng, 8));
    }
    const FiniteBundle b(ring, g.group, pts, fibers);
    CaseOutcome out;
    out.detail["group"] = g.name;
    out.detail["p"] = ring.p();
    ProjDim fiberwise = ProjDim::exactly(0);
    bool vanish = true;
    const GModule triv = GModule::trivial(ring, g.group);
    ojson pds = ojson::array();
    for (const auto& f : fibers) {
      const ProjDim d = pd_bounded(f, cutoff, cover);
      pds.push_back(to_json(d));
      fiberwise = max(fiberwise, d);
      if (d.value() == 0u)
        vanish = vanish && tor_bounded(f, triv, 1, cover).dimension == 0 && ext_bounded(f, triv, 1, cover) == 0;
    }
    const ProjDim total = pd_bounded(direct_sum(b).sum, cutoff, cover);
    out.detail["fiber_pds"] = std::move(pds);
    out.detail["sum_pd"] = to_json(total);
    out.check("pd_of_sum_is_fiberwise_max", total == fiberwise);
    out.check("tor_ext_vanish_on_projectives", vanish);
    out.check("restriction_commutes_with_sum", restriction_commutes_with_sum(b, random_subgroup(g.group, rng)));

    ojson doc = base_document(ring, g.group);
    ojson names = ojson::array();
    for (std::size_t x = 0; x < n; ++x) {
      doc["modules"]["F" + std::to_string(x)] = module_json(fibers[x], "G");
      names.push_back("F" + std::to_string(x));
    }
    doc["bundles"]["B"] = {{"points", pts}, {"fibers", names}};
    doc["task"] = {{"bundle", "B"}, {"cutoff", cutoff}};
    out.document = std::move(doc);
    return out;
  };
  return s;
}

// ---- peterlem ------------------------------------------------------------------------

Suite peterlem(CoverKind cover) {
  Suite s;
  s.count = 50;
  s.run = [cover](std::size_t, Rng& rng) {
    const auto groups = nontrivial_groups(8);
    const auto& g = groups[rng.below(groups.size())];
    const ChainRing ring(rng.coin() ? 3 : 2);
    const GModule m = random_module(ring, g.group, rng, 12);
    const ProjDim d = pd_bounded(m, 3, cover);
    CaseOutcome out;
    out.detail["group"] = g.name;
    out.detail["p"] = ring.p();
    out.detail["dim"] = m.dim();
    out.detail["pd"] = to_json(d);
    out.check("pd_zero_or_above_cutoff", d.is_above_cutoff() || d.value() == 0u);
    ojson doc = base_document(ring, g.group);
    doc["modules"]["M"] = module_json(m, "G");
    doc["task"] = {{"module", "M"}, {"cutoff", 3}};
    out.document = std::move(doc);
    return out;
  };
  return s;
}

// ---- tensorcomm ----------------------------------------------------------------------

std::vector<ChainRing> tensor_rings() { return {ChainRing(2), ChainRing(3), ChainRing(2, 2)}; }

CaseOutcome middle_linear_case(std::size_t i, Rng& rng) {
  const ChainRing ring = tensor_rings()[i % 3];
  // Every pair has |M_x| * |N_y| <= 16.
  const std::size_t cap = ring.modulus() == 2 ? 2 : 1;
  auto dims = [&] {
    std::vector<std::size_t> d(1 + rng.below(2));
    for (auto& x : d) x = 1 + rng.below(cap);
    return d;
  };
  const FiniteBundle a = FiniteBundle::group_free(ring, dims());
  const FiniteBundle b = FiniteBundle::group_free(ring, dims());
  const FiniteBundle target = FiniteBundle::group_free(ring, dims());
  const FiniteBundle t = bundle_tensor(a, b);
  std::vector<std::size_t> space;
  std::vector<Mat> forms;
  for (std::size_t q = 0; q < t.size(); ++q) {
    space.push_back(rng.below(target.size()));
    forms.push_back(random_matrix(ring, t.fiber(q).dim(), target.fiber(space.back()).dim(), rng));
  }
  PairMap psi = pair_map_from_matrices(a, b, space, forms);
  CaseOutcome out;
  out.detail["ring"] = ring.name();
  out.detail["pairs"] = t.size();
  try {
    const auto f = middle_linear_check(a, b, target, psi);
    out.check("middle_linear_factor_exists", true);
    out.check("factor_matches_forms", f.factor.fiber_maps() == forms && f.factor.space_map() == space);
    out.check("pure_tensors_span", f.pure_tensors_span);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotMiddleLinear) throw;
    out.detail["reason"] = e.what();
    out.check("middle_linear_factor_exists", false);
  }
  // psi(0, 0) != 0 breaks additivity.
  const std::size_t q = rng.below(t.size());
  auto& v = psi.values[q][0];
  if (!v.empty()) {
    v[0] = ring.add(v[0], 1);
    bool rejected = false;
    try {
      middle_linear_check(a, b, target, psi);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotMiddleLinear) throw;
      rejected = true;
    }
    out.check("perturbed_map_rejected", rejected);
  }
  return out;
}

Suite tensorcomm() {
  Suite s;
  s.count = 40;
  s.run = [](std::size_t i, Rng& rng) {
    if (i >= 30) return middle_linear_case(i, rng);
    const ChainRing ring = tensor_rings()[i % 3];
    const GroupPtr triv = trivial_group();
    // Every fifth pair carries a C2-action on its left side.
    const GroupPtr left = i % 5 == 4 ? cyclic_group(2) : triv;
    const FiniteBundle a = random_bundle(ring, left, rng, 3, 2);
    const FiniteBundle b = random_bundle(ring, triv, rng, 3, 2);
    CaseOutcome out;
    out.detail["ring"] = ring.name();
    out.detail["points"] = {a.size(), b.size()};
    out.check("tensorcomm_bijective", tensorcomm_check(a, b).bijective);
    return out;
  };
  return s;
}

// ---- universal-props ---------------------------------------------------------------------

Suite universal_props() {
  Suite s;
  s.count = 40;
  s.run = [](std::size_t i, Rng& rng) {
    const ChainRing ring = tensor_rings()[i % 3];
    const GroupPtr triv = trivial_group();
    CaseOutcome out;
    out.detail["ring"] = ring.name();
    const FiniteBundle a = random_bundle(ring, triv, rng);
    const FiniteBundle b = random_bundle(ring, triv, rng);
    const FiniteBundle c = random_bundle(ring, triv, rng);

    const auto f = random_bundle_morphism(c, a, rng), g = random_bundle_morphism(c, b, rng);
    const auto prod = bundle_product(a, b);
    const auto pr = pairing(prod, f, g);
    out.check("product", compose(pr, prod.first) == f && compose(pr, prod.second) == g);

    const auto f2 = random_bundle_morphism(a, c, rng), g2 = random_bundle_morphism(b, c, rng);
    const auto cop = bundle_coproduct(a, b);
    const auto cp = copairing(cop, f2, g2);
    out.check("coproduct", compose(cop.first, cp) == f2 && compose(cop.second, cp) == g2);

    if (ring.is_field()) {
      const auto e1 = random_bundle_morphism(a, b, rng), e2 = random_bundle_morphism(a, b, rng);
      const auto eq = bundle_equalizer(e1, e2);
      out.check("equalizer", compose(eq.inclusion, e1) == compose(eq.inclusion, e2) &&
                                 equalizer_lift(eq, eq.inclusion) == BundleMorphism::identity(eq.bundle));
    }

    const GModule n = plain_module(ring, rng.below(3));
    std::vector<Mat> psi;
    for (const auto& fib : a.fibers()) psi.push_back(random_matrix(ring, fib.dim(), n.dim(), rng));
    const auto fac = factor_through_sum(a, n, psi);
    const auto ds = direct_sum(a);
    bool sum_ok = fac.factor && fac.unique;
    for (std::size_t x = 0; sum_ok && x < a.size(); ++x)
      sum_ok = ds.injections[x].matrix() * fac.factor->matrix() == psi[x];
    out.check("sum_factorization", sum_ok);
    out.check("cosheaf", cosheaf_check(a).passed);

    // Over a group: restriction and the equivariant factorization of injections.
    const std::vector<GroupPtr> groups = {cyclic_group(2), symmetric3(), klein4()};
    const GroupPtr gp = groups[rng.below(groups.size())];
    const FiniteBundle gb = random_bundle(ring, gp, rng, 3, 4);
    const auto gds = direct_sum(gb);
    std::vector<Mat> inj;
    for (const auto& x : gds.injections) inj.push_back(x.matrix());
    const auto gfac = factor_through_sum(gb, gds.sum, inj);
    out.check("sum_factorization_equivariant", gfac.factor && gfac.unique && gfac.factor->matrix().is_identity());
    out.check("restriction_commutes_with_sum", restriction_commutes_with_sum(gb, random_subgroup(gp, rng)));

    const auto fc = random_factor_case(ring, rng);
    const auto lf = factor_through_level(fc.tower, fc.target, fc.phi);
    bool least = lf.level <= fc.planted &&
                 compose(fc.tower.projection(fc.tower.depth(), lf.level), lf.factor) == fc.phi;
    for (std::size_t k = 0; least && k < lf.level; ++k)
      if (factor_at_level(fc.tower, fc.target, fc.phi, k)) least = false;
    out.check("tower_factor_least_level", least);
    out.check("tower_limit", tower_limit_checks(fc.tower).passed());
    return out;
  };
  return s;
}

// ---- solver-oracle -----------------------------------------------------------------------

std::set<Vec> brute_solutions(const Mat& a, const Vec& b) {
  std::set<Vec> out;
  const auto q = a.ring().modulus();
  Vec x(a.rows(), 0);
  for (;;) {
    if (times(x, a) == b) out.insert(x);
    std::size_t i = 0;
    while (i < x.size() && ++x[i] == q) x[i++] = 0;
    if (i == x.size()) return out;
  }
}

std::set<Vec> expand(const SolutionSet& s, const ChainRing& r, std::size_t unknowns) {
  std::set<Vec> out;
  if (!s.solvable()) return out;
  const Mat& k = s.kernel_basis;
  Vec c(k.rows(), 0);
  for (;;) {
    Vec x = *s.particular;
    if (k.rows() > 0) {
      const Vec y = times(c, k);
      for (std::size_t i = 0; i < unknowns; ++i) x[i] = r.add(x[i], y[i]);
    }
    out.insert(x);
    std::size_t i = 0;
    while (i < c.size() && ++c[i] == r.modulus()) c[i++] = 0;
    if (i == c.size()) return out;
  }
}

Suite solver_oracle() {
  Suite s;
  s.count = 1000;
  s.run = [](std::size_t i, Rng& rng) {
    const std::vector<ChainRing> rings = {ChainRing(2, 2), ChainRing(2, 3), ChainRing(3, 2), ChainRing(2),
                                          ChainRing(3)};
    const ChainRing& ring = rings[i / 200];
    const std::size_t unknowns = 1 + rng.below(4), eqs = 1 + rng.below(4);
    Mat a = random_matrix(ring, unknowns, eqs, rng);
    // Thin the matrix out so zero divisors and dependent rows show up.
    for (std::size_t r = 0; r < unknowns; ++r)
      for (std::size_t c = 0; c < eqs; ++c)
        if (rng.below(3) == 0) a.at(r, c) = ring.mul(a(r, c), ring.p());
    Vec b;
    if (rng.coin()) {
      Vec x0(unknowns);
      for (auto& v : x0) v = rng.below(ring.modulus());
      b = times(x0, a);
    } else {
      b.resize(eqs);
      for (auto& v : b) v = rng.below(ring.modulus());
    }
    const auto sol = solve_affine(a, b);
    const auto want = brute_solutions(a, b);
    const auto got = expand(sol, ring, unknowns);
    CaseOutcome out;
    out.detail["ring"] = ring.name();
    out.detail["shape"] = {unknowns, eqs};
    out.detail["solutions"] = want.size();
    out.check("solution_set_matches_enumeration", want == got);
    out.check("kernel_is_howell_form", howell_form(sol.kernel_basis) == sol.kernel_basis);
    return out;
  };
  return s;
}

}  // namespace

const std::vector<std::string>& sweep_suites() {
  static const std::vector<std::string> names = {"mackey-small", "impcorr", "peterlem",
                                                 "tensorcomm", "universal-props", "solver-oracle"};
  return names;
}

Report run_sweep(const Options& opt) {
  ojson task;
  task["suite"] = opt.suite;
  task["seed"] = opt.seed;
  if (opt.case_index) task["case"] = *opt.case_index;
  Report r("sweep", task);

  Suite suite;
  if (opt.suite == "mackey-small") suite = mackey_small();
  else if (opt.suite == "impcorr") suite = impcorr(opt.cutoff, opt.cover);
  else if (opt.suite == "peterlem") suite = peterlem(opt.cover);
  else if (opt.suite == "tensorcomm") suite = tensorcomm();
  else if (opt.suite == "universal-props") suite = universal_props();
  else if (opt.suite == "solver-oracle") suite = solver_oracle();
  else throw InputError("--suite", "unknown suite '" + opt.suite + "'");

  std::size_t lo = 0, hi = suite.count;
  if (opt.case_index) {
    if (*opt.case_index >= suite.count)
      throw InputError("--case", "suite has " + std::to_string(suite.count) + " cases");
    lo = *opt.case_index;
    hi = lo + 1;
  }

  std::map<std::string, std::pair<std::size_t, std::size_t>> tally;  // passed, total
  std::vector<std::string> order;
  ojson failures = ojson::array(), repro = ojson::array();
  std::size_t failed_cases = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    Rng rng(case_seed(opt.seed, opt.suite, i));
    CaseOutcome c = suite.run(i, rng);
    bool ok = true;
    ojson failed = ojson::array();
    for (const auto& [name, passed] : c.checks) {
      if (!tally.count(name)) order.push_back(name);
      auto& t = tally[name];
      ++t.second;
      if (passed) ++t.first;
      else {
        ok = false;
        failed.push_back(name);
      }
    }
    if (ok) continue;
    ++failed_cases;
    ojson f;
    f["case"] = i;
    f["failed_checks"] = std::move(failed);
    f["detail"] = std::move(c.detail);
    failures.push_back(std::move(f));
    ojson rp;
    rp["case"] = i;
    rp["argv"] = {"sweep", "--suite", opt.suite, "--seed", std::to_string(opt.seed), "--case", std::to_string(i)};
    if (!c.document.is_null()) rp["document"] = std::move(c.document);
    repro.push_back(std::move(rp));
  }

  auto& res = r.results();
  res["suite"] = opt.suite;
  res["cases"] = hi - lo;
  res["failed_cases"] = failed_cases;
  res["failures"] = std::move(failures);
  for (const auto& name : order) {
    const auto& [passed, total] = tally[name];
    ojson d;
    d["passed"] = passed;
    d["total"] = total;
    r.check(name, passed == total, d);
  }
  ojson rp;
  rp["cases"] = std::move(repro);
  r.set_reproduction(std::move(rp));
  return r;
}

}  // namespace profmod::cli
