#include "document.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "profmod/error.hpp"

namespace profmod::cli {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string join(const std::string& path, std::size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw InputError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(join(path, key), "missing field");
  return *it;
}

std::uint64_t as_uint(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw InputError(path, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw InputError(path, "expected a string");
  return v.get<std::string>();
}

namespace {

const json& array_at(const json& v, const std::string& path) {
  if (!v.is_array()) throw InputError(path, "expected a list");
  return v;
}

// Rethrows library errors raised while building an entry as input errors.
template <class F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw InputError(path, e.what());
  }
}

}  // namespace

Perm parse_perm(const json& v, std::size_t degree, const std::string& path) {
  Perm p;
  if (v.is_string()) {
    p = identity_perm(degree);
    std::vector<bool> used(degree, false);
    const std::string s = v.get<std::string>();
    std::size_t i = 0;
    auto skip = [&] {
      while (i < s.size() && (s[i] == ' ' || s[i] == ',')) ++i;
    };
    skip();
    while (i < s.size()) {
      if (s[i] != '(') throw InputError(path, "expected '(' in cycle notation");
      ++i;
      std::vector<std::uint32_t> cycle;
      for (;;) {
        skip();
        if (i >= s.size()) throw InputError(path, "unterminated cycle");
        if (s[i] == ')') {
          ++i;
          break;
        }
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) throw InputError(path, "expected a point in cycle notation");
        const unsigned long x = std::stoul(s.substr(i, j - i));
        if (x >= degree) throw InputError(path, "point " + std::to_string(x) + " >= degree " + std::to_string(degree));
        if (used[x]) throw InputError(path, "point " + std::to_string(x) + " repeated");
        used[x] = true;
        cycle.push_back(static_cast<std::uint32_t>(x));
        i = j;
      }
      for (std::size_t c = 0; c < cycle.size(); ++c) p[cycle[c]] = cycle[(c + 1) % cycle.size()];
      skip();
    }
    return p;
  }
  if (!v.is_array()) throw InputError(path, "expected cycle notation or an image list");
  for (std::size_t i = 0; i < v.size(); ++i) p.push_back(static_cast<std::uint32_t>(as_uint(v[i], join(path, i))));
  if (!is_permutation(p, degree))
    throw InputError(path, "not a permutation of 0.." + std::to_string(degree - 1));
  return p;
}

Mat parse_matrix(const json& v, const ChainRing& ring, std::size_t rows, std::size_t cols,
                 const std::string& path) {
  array_at(v, path);
  if (v.size() != rows)
    throw InputError(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(v.size()));
  Mat m(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string rp = join(path, i);
    const json& row = array_at(v[i], rp);
    if (row.size() != cols)
      throw InputError(rp, "expected " + std::to_string(cols) + " entries, got " + std::to_string(row.size()));
    for (std::size_t j = 0; j < cols; ++j) {
      if (!row[j].is_number_integer()) throw InputError(join(rp, j), "expected an integer");
      m.set(i, j, row[j].get<std::int64_t>());
    }
  }
  return m;
}

Document Document::load(const std::string& file, std::size_t max_group_order) {
  std::ifstream in(file);
  if (!in) throw InputError(file, "cannot read file");
  std::stringstream ss;
  ss << in.rdbuf();
  json raw;
  try {
    raw = json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw InputError(file, std::string("not valid JSON: ") + e.what());
  }
  return parse(raw, max_group_order);
}

Document Document::parse(const json& raw, std::size_t max_group_order) {
  if (!raw.is_object()) throw InputError("document", "expected an object");
  Document d;
  d.raw_ = raw;
  d.trivial_ = trivial_group();
  if (raw.contains("ring")) {
    const json& r = raw["ring"];
    const auto p = as_uint(require(r, "p", "ring"), "ring.p");
    const auto k = r.contains("k") ? as_uint(r["k"], "ring.k") : 1;
    d.ring_ = at_path("ring", [&] { return ChainRing(p, static_cast<unsigned>(k)); });
  }
  if (raw.contains("group")) {
    const json& g = raw["group"];
    const auto degree = as_uint(require(g, "degree", "group"), "group.degree");
    if (degree == 0) throw InputError("group.degree", "must be at least 1");
    std::vector<Perm> gens;
    const json& gl = array_at(require(g, "generators", "group"), "group.generators");
    for (std::size_t i = 0; i < gl.size(); ++i)
      gens.push_back(parse_perm(gl[i], degree, join("group.generators", i)));
    d.group_ = at_path("group", [&] {
      return FiniteGroup::close_generators(gens, degree, max_group_order);
    });
    d.subgroups_.emplace("G", Subgroup::whole(d.group_));
    d.subgroups_.emplace("1", Subgroup::trivial(d.group_));
  }
  if (raw.contains("subgroups")) {
    const json& subs = raw["subgroups"];
    if (!subs.is_object()) throw InputError("subgroups", "expected an object");
    if (!d.group_) throw InputError("group", "required by subgroups");
    for (const auto& [name, spec] : subs.items()) {
      const std::string path = join("subgroups", name);
      if (name == "G" || name == "1") throw InputError(path, "the names G and 1 are reserved");
      const json& gl = array_at(require(spec, "generators", path), join(path, "generators"));
      std::vector<std::size_t> gens;
      for (std::size_t i = 0; i < gl.size(); ++i) {
        const std::string gp = join(join(path, "generators"), i);
        auto idx = d.group_->index_of(parse_perm(gl[i], d.group_->degree(), gp));
        if (!idx) throw InputError(gp, "not an element of the group");
        gens.push_back(*idx);
      }
      d.subgroups_.emplace(name, Subgroup::generated(d.group_, gens));
    }
  }
  if (raw.contains("modules")) {
    const json& mods = raw["modules"];
    if (!mods.is_object()) throw InputError("modules", "expected an object");
    if (!d.ring_) throw InputError("ring", "required by modules");
    const ChainRing& r = *d.ring_;
    for (const auto& [name, spec] : mods.items()) {
      const std::string path = join("modules", name);
      const std::string over =
          spec.contains("over") ? as_string(spec["over"], join(path, "over")) : (d.group_ ? "G" : "plain");
      const GroupPtr g = d.group_named(over, join(path, "over"));
      const std::string kind = spec.contains("kind") ? as_string(spec["kind"], join(path, "kind"))
                                                     : "matrices";
      GModule m = at_path(path, [&] {
        if (kind == "trivial") return GModule::trivial(r, g);
        if (kind == "regular") return GModule::regular(r, g);
        if (kind == "zero") return GModule::zero(r, g);
        if (kind == "free") return GModule::free(r, g, as_uint(require(spec, "rank", path), join(path, "rank")));
        if (kind != "matrices")
          throw InputError(join(path, "kind"), "unknown kind '" + kind +
                                                   "' (trivial, regular, zero, free, matrices)");
        const std::size_t dim = as_uint(require(spec, "dim", path), join(path, "dim"));
        const std::string gp = join(path, "generators");
        if (g->generators().empty() && !spec.contains("generators"))
          return GModule::from_element_actions(r, g, dim, {Mat::identity(r, dim)});
        const json& gl = array_at(require(spec, "generators", path), gp);
        if (gl.size() != g->generators().size())
          throw InputError(gp, "expected " + std::to_string(g->generators().size()) +
                                   " matrices, one per generator of " + over);
        std::vector<Mat> mats;
        for (std::size_t i = 0; i < gl.size(); ++i) {
          mats.push_back(parse_matrix(gl[i], r, dim, dim, join(gp, i)));
          if (!is_invertible(mats.back())) throw InputError(join(gp, i), "matrix is not invertible");
        }
        if (g->generators().empty()) return GModule::from_element_actions(r, g, dim, {Mat::identity(r, dim)});
        return GModule::from_generators(r, g, dim, mats);
      });
      d.modules_.emplace(name, std::move(m));
    }
  }
  if (raw.contains("bundles")) {
    const json& bs = raw["bundles"];
    if (!bs.is_object()) throw InputError("bundles", "expected an object");
    if (!d.ring_) throw InputError("ring", "required by bundles");
    for (const auto& [name, spec] : bs.items()) {
      const std::string path = join("bundles", name);
      const json& pts = array_at(require(spec, "points", path), join(path, "points"));
      const json& fibs = array_at(require(spec, "fibers", path), join(path, "fibers"));
      if (pts.size() != fibs.size())
        throw InputError(join(path, "fibers"), "expected one fiber per point");
      std::vector<std::string> names;
      std::vector<GModule> fibers;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        names.push_back(as_string(pts[i], join(join(path, "points"), i)));
        const std::string fp = join(join(path, "fibers"), i);
        fibers.push_back(d.module(as_string(fibs[i], fp), fp));
      }
      GroupPtr g;
      if (spec.contains("over")) g = d.group_named(as_string(spec["over"], join(path, "over")), join(path, "over"));
      else if (!fibers.empty()) g = fibers.front().group();
      else g = d.group_ ? d.group_ : d.trivial_;
      d.bundles_.emplace(name, at_path(path, [&] { return FiniteBundle(*d.ring_, g, names, fibers); }));
    }
  }
  if (raw.contains("morphisms")) {
    const json& ms = raw["morphisms"];
    if (!ms.is_object()) throw InputError("morphisms", "expected an object");
    for (const auto& [name, spec] : ms.items()) {
      const std::string path = join("morphisms", name);
      const FiniteBundle& src = d.bundle(as_string(require(spec, "source", path), join(path, "source")),
                                         join(path, "source"));
      const FiniteBundle& tgt = d.bundle(as_string(require(spec, "target", path), join(path, "target")),
                                         join(path, "target"));
      const std::string sp = join(path, "space_map"), fp = join(path, "fiber_maps");
      const json& sm = array_at(require(spec, "space_map", path), sp);
      const json& fm = array_at(require(spec, "fiber_maps", path), fp);
      if (sm.size() != src.size()) throw InputError(sp, "expected one target point per source point");
      if (fm.size() != src.size()) throw InputError(fp, "expected one matrix per source point");
      std::vector<std::size_t> space;
      std::vector<Mat> fibers;
      for (std::size_t x = 0; x < src.size(); ++x) {
        const std::string name_y = as_string(sm[x], join(sp, x));
        auto y = tgt.index_of(name_y);
        if (!y) throw InputError(join(sp, x), "no point '" + name_y + "' in the target");
        space.push_back(*y);
        fibers.push_back(parse_matrix(fm[x], *d.ring_, src.fiber(x).dim(), tgt.fiber(*y).dim(), join(fp, x)));
      }
      d.morphisms_.emplace(name, at_path(path, [&] { return BundleMorphism(src, tgt, space, fibers); }));
    }
  }
  if (raw.contains("towers")) {
    const json& ts = raw["towers"];
    if (!ts.is_object()) throw InputError("towers", "expected an object");
    for (const auto& [name, spec] : ts.items()) {
      const std::string path = join("towers", name);
      TowerSpec t;
      const json& lv = array_at(require(spec, "levels", path), join(path, "levels"));
      const json& tr = array_at(require(spec, "transitions", path), join(path, "transitions"));
      for (std::size_t i = 0; i < lv.size(); ++i) {
        const std::string lp = join(join(path, "levels"), i);
        t.levels.push_back(as_string(lv[i], lp));
        d.bundle(t.levels.back(), lp);
      }
      for (std::size_t i = 0; i < tr.size(); ++i) {
        const std::string tp = join(join(path, "transitions"), i);
        t.transitions.push_back(as_string(tr[i], tp));
        d.morphism(t.transitions.back(), tp);
      }
      if (t.levels.empty()) throw InputError(join(path, "levels"), "a tower needs at least one level");
      if (t.transitions.size() + 1 != t.levels.size())
        throw InputError(join(path, "transitions"), "expected one transition fewer than levels");
      d.towers_.emplace(name, std::move(t));
    }
  }
  if (raw.contains("task") && !raw["task"].is_object()) throw InputError("task", "expected an object");
  return d;
}

const ChainRing& Document::ring() const {
  if (!ring_) throw InputError("ring", "missing field");
  return *ring_;
}

const GroupPtr& Document::group() const {
  if (!group_) throw InputError("group", "missing field");
  return group_;
}

const json& Document::task() const {
  static const json empty = json::object();
  return raw_.contains("task") ? raw_["task"] : empty;
}

GroupPtr Document::group_named(const std::string& name, const std::string& path) const {
  if (name == "plain") return trivial_;
  return subgroup(name, path).group();
}

const Subgroup& Document::subgroup(const std::string& name, const std::string& path) const {
  auto it = subgroups_.find(name);
  if (it == subgroups_.end()) throw InputError(path, "no subgroup named '" + name + "'");
  return it->second;
}

const GModule& Document::module(const std::string& name, const std::string& path) const {
  auto it = modules_.find(name);
  if (it == modules_.end()) throw InputError(path, "no module named '" + name + "'");
  return it->second;
}

const FiniteBundle& Document::bundle(const std::string& name, const std::string& path) const {
  auto it = bundles_.find(name);
  if (it == bundles_.end()) throw InputError(path, "no bundle named '" + name + "'");
  return it->second;
}

const BundleMorphism& Document::morphism(const std::string& name, const std::string& path) const {
  auto it = morphisms_.find(name);
  if (it == morphisms_.end()) throw InputError(path, "no morphism named '" + name + "'");
  return it->second;
}

const TowerSpec& Document::tower_spec(const std::string& name, const std::string& path) const {
  auto it = towers_.find(name);
  if (it == towers_.end()) throw InputError(path, "no tower named '" + name + "'");
  return it->second;
}

Tower Document::tower(const std::string& name, const std::string& path) const {
  const TowerSpec& s = tower_spec(name, path);
  std::vector<FiniteBundle> levels;
  std::vector<BundleMorphism> trans;
  for (const auto& l : s.levels) levels.push_back(bundle(l, path));
  for (const auto& t : s.transitions) trans.push_back(morphism(t, path));
  try {
    return Tower(std::move(levels), std::move(trans));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::TransitionNotSurjective) throw;
    throw InputError(path, e.what());
  }
}

const GModule& Document::task_module(const std::string& key) const {
  const std::string path = join("task", key);
  return module(as_string(require(task(), key, "task"), path), path);
}

const Subgroup& Document::task_subgroup(const std::string& key) const {
  const std::string path = join("task", key);
  return subgroup(as_string(require(task(), key, "task"), path), path);
}

// ---- encoders --------------------------------------------------------------------

ojson to_json(const Mat& m) {
  ojson rows = ojson::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ojson to_json(const ProjDim& d) {
  if (d.is_above_cutoff()) return d.to_string();
  return *d.value();
}

ojson ring_json(const ChainRing& r) {
  ojson j;
  j["p"] = r.p();
  j["k"] = r.k();
  return j;
}

ojson group_json(const FiniteGroup& g) {
  ojson j;
  j["degree"] = g.degree();
  ojson gens = ojson::array();
  for (auto x : g.generators()) gens.push_back(cycle_string(g.element(x)));
  j["generators"] = std::move(gens);
  return j;
}

ojson subgroup_json(const Subgroup& h) {
  ojson gens = ojson::array();
  for (auto x : h.generators()) gens.push_back(cycle_string(h.parent()->element(x)));
  ojson j;
  j["generators"] = std::move(gens);
  return j;
}

ojson module_json(const GModule& m, const std::string& over) {
  ojson j;
  j["over"] = over;
  j["dim"] = m.dim();
  ojson gens = ojson::array();
  for (std::size_t i = 0; i < m.group()->generators().size(); ++i) gens.push_back(to_json(m.generator_action(i)));
  j["generators"] = std::move(gens);
  return j;
}

}  // namespace profmod::cli
