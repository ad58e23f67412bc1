#pragma once

// Input documents: JSON with ring, group, subgroups, modules, bundles,
// morphisms and towers, plus a per-command "task" object. See
// docs/input-format.md.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "profmod/homology.hpp"
#include "profmod/tower.hpp"

namespace profmod::cli {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

// Bad input: the message starts with the offending field path.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what) {}
};

// Field access with paths in the diagnostics.
const json& require(const json& obj, const std::string& key, const std::string& path);
std::uint64_t as_uint(const json& v, const std::string& path);
std::string as_string(const json& v, const std::string& path);
std::string join(const std::string& path, const std::string& key);
std::string join(const std::string& path, std::size_t index);

// "(0 1)(2 3)", "()" or an image list [1, 0, 2, 3].
Perm parse_perm(const json& v, std::size_t degree, const std::string& path);
// Rows of integers, reduced into the ring.
Mat parse_matrix(const json& v, const ChainRing& ring, std::size_t rows, std::size_t cols,
                 const std::string& path);

struct TowerSpec {
  std::vector<std::string> levels;
  std::vector<std::string> transitions;
};

class Document {
 public:
  // Throws InputError.
  static Document parse(const json& raw, std::size_t max_group_order);
  static Document load(const std::string& file, std::size_t max_group_order);

  const json& raw() const noexcept { return raw_; }
  const ChainRing& ring() const;
  const GroupPtr& group() const;
  // The task object ({} when absent).
  const json& task() const;

  // Names resolve against their sections; "G" and "1" always name the whole
  // and trivial subgroups once a group is given.
  const Subgroup& subgroup(const std::string& name, const std::string& path) const;
  const GModule& module(const std::string& name, const std::string& path) const;
  const FiniteBundle& bundle(const std::string& name, const std::string& path) const;
  const BundleMorphism& morphism(const std::string& name, const std::string& path) const;
  const TowerSpec& tower_spec(const std::string& name, const std::string& path) const;
  // May throw profmod::Error (TransitionNotSurjective).
  Tower tower(const std::string& name, const std::string& path) const;

  // Helpers for task fields that name an entry.
  const GModule& task_module(const std::string& key) const;
  const Subgroup& task_subgroup(const std::string& key) const;

 private:
  json raw_;
  std::optional<ChainRing> ring_;
  GroupPtr group_;
  GroupPtr trivial_;
  std::map<std::string, Subgroup> subgroups_;
  std::map<std::string, GModule> modules_;
  std::map<std::string, FiniteBundle> bundles_;
  std::map<std::string, BundleMorphism> morphisms_;
  std::map<std::string, TowerSpec> towers_;

  GroupPtr group_named(const std::string& name, const std::string& path) const;
};

// JSON encodings used by reports and reproduction documents.
ojson to_json(const Mat& m);
ojson to_json(const ProjDim& d);
ojson ring_json(const ChainRing& r);
ojson group_json(const FiniteGroup& g);
// Subgroup generators as cycle strings in the parent.
ojson subgroup_json(const Subgroup& h);
// {"over": name, "dim": d, "generators": [...]}.
ojson module_json(const GModule& m, const std::string& over);

}  // namespace profmod::cli
