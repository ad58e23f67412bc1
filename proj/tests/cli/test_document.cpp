#include <doctest.h>

#include <string>

#include "commands.hpp"
#include "profmod/catalog.hpp"

using namespace profmod;
using namespace profmod::cli;

namespace {

std::string parse_error(const json& raw) {
  try {
    Document::parse(raw, 5040);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

json c2_doc() {
  return json::parse(R"j({
    "ring": {"p": 2},
    "group": {"degree": 2, "generators": ["(0 1)"]},
    "modules": {"T": {"kind": "trivial"}, "M": {"dim": 2, "generators": [[[1, 1], [0, 1]]]}}
  })j");
}

}  // namespace

TEST_CASE("permutations in both notations") {
  CHECK(parse_perm(json("(0 1 2)"), 4, "p") == Perm{1, 2, 0, 3});
  CHECK(parse_perm(json("(0 1)(2 3)"), 4, "p") == Perm{1, 0, 3, 2});
  CHECK(parse_perm(json("()"), 2, "p") == Perm{0, 1});
  CHECK(parse_perm(json::parse("[2, 0, 1]"), 3, "p") == Perm{2, 0, 1});
  CHECK_THROWS_AS(parse_perm(json("(0 0)"), 2, "p"), InputError);
  CHECK_THROWS_AS(parse_perm(json("(0 5)"), 2, "p"), InputError);
  CHECK_THROWS_AS(parse_perm(json::parse("[0, 0]"), 2, "p"), InputError);
  CHECK_THROWS_AS(parse_perm(json("0 1"), 2, "p"), InputError);
}

TEST_CASE("matrices reduce into the ring") {
  const ChainRing z4(2, 2);
  Mat m = parse_matrix(json::parse("[[5, -1], [4, 2]]"), z4, 2, 2, "m");
  CHECK(m.to_rows() == std::vector<std::vector<std::int64_t>>{{1, 3}, {0, 2}});
  CHECK_THROWS_AS(parse_matrix(json::parse("[[1, 2]]"), z4, 2, 2, "m"), InputError);
  CHECK_THROWS_AS(parse_matrix(json::parse("[[1, 2], [1]]"), z4, 2, 2, "m"), InputError);
  CHECK_THROWS_AS(parse_matrix(json::parse("[[1, 2], [1, 0.5]]"), z4, 2, 2, "m"), InputError);
}

TEST_CASE("documents resolve names") {
  const Document doc = Document::parse(c2_doc(), 5040);
  CHECK(doc.group()->order() == 2);
  CHECK(doc.module("T", "t").dim() == 1);
  CHECK(doc.module("M", "t").dim() == 2);
  CHECK(doc.subgroup("G", "t").order() == 2);
  CHECK(doc.subgroup("1", "t").order() == 1);
  CHECK(doc.task().empty());
  CHECK_THROWS_AS(doc.module("X", "t"), InputError);
}

TEST_CASE("diagnostics name the offending field") {
  json d = c2_doc();
  d["modules"]["M"]["generators"][0] = json::parse("[[1, 1], [1, 1]]");
  CHECK(starts_with(parse_error(d), "modules.M.generators[0]:"));

  d = c2_doc();
  d["modules"]["M"]["generators"][0] = json::parse("[[1, 1], [1, 0]]");  // order 3, not 2
  CHECK(starts_with(parse_error(d), "modules.M:"));

  d = c2_doc();
  d["ring"]["p"] = 6;
  CHECK(starts_with(parse_error(d), "ring:"));

  d = c2_doc();
  d["modules"]["M"].erase("dim");
  CHECK(parse_error(d) == "modules.M.dim: missing field");

  d = c2_doc();
  d["modules"]["M"]["kind"] = "weird";
  CHECK(starts_with(parse_error(d), "modules.M.kind:"));

  d = c2_doc();
  d["group"]["generators"][0] = "(0 2)";
  CHECK(starts_with(parse_error(d), "group.generators[0]:"));

  d = c2_doc();
  d["bundles"]["B"] = json::parse(R"j({"points": ["a"], "fibers": ["Q"]})j");
  CHECK(parse_error(d) == "bundles.B.fibers[0]: no module named 'Q'");

  d = c2_doc();
  d["group"]["generators"].push_back("(0 1)");
  CHECK(starts_with(parse_error(d), "modules.M.generators:"));

  d = json::parse(R"j({"group": {"degree": 4, "generators": ["(0 1 2 3)", "(0 1)"]}})j");
  CHECK(Document::parse(d, 24).group()->order() == 24);
  try {
    Document::parse(d, 23);
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(starts_with(e.what(), "group:"));
  }
}

TEST_CASE("morphisms and towers") {
  json d = json::parse(R"j({
    "ring": {"p": 3},
    "modules": {"P": {"over": "plain", "dim": 1}},
    "bundles": {"A": {"points": ["a", "b"], "fibers": ["P", "P"]}, "B": {"points": ["c"], "fibers": ["P"]}},
    "morphisms": {"f": {"source": "A", "target": "B", "space_map": ["c", "c"], "fiber_maps": [[[1]], [[2]]]}},
    "towers": {"T": {"levels": ["B", "A"], "transitions": ["f"]}}
  })j");
  const Document doc = Document::parse(d, 5040);
  CHECK(doc.morphism("f", "t").space_map() == std::vector<std::size_t>{0, 0});
  CHECK(doc.tower("T", "t").depth() == 1);

  d["morphisms"]["f"]["space_map"][1] = "z";
  CHECK(parse_error(d) == "morphisms.f.space_map[1]: no point 'z' in the target");
  d["morphisms"]["f"]["space_map"][1] = "c";
  d["towers"]["T"]["transitions"] = json::array();
  CHECK(starts_with(parse_error(d), "towers.T.transitions:"));
}

TEST_CASE("encoded modules parse back to the same module") {
  Rng rng(90);
  for (const auto& [name, g] : builtin_groups(8)) {
    const ChainRing ring(3);
    auto h = random_subgroup(g, rng);
    auto m = random_module(ring, h.group(), rng, 6);
    ojson doc;
    doc["ring"] = ring_json(ring);
    doc["group"] = group_json(*g);
    doc["subgroups"]["H"] = subgroup_json(h);
    doc["modules"]["M"] = module_json(m, "H");
    doc["task"] = {{"H", "H"}, {"K", "G"}, {"M", "M"}};
    const Document parsed = Document::parse(json::parse(doc.dump()), 5040);
    CAPTURE(name);
    CHECK(parsed.subgroup("H", "t").members() == h.members());
    CHECK(parsed.module("M", "t").generator_matrices() == m.generator_matrices());
    Options opt;
    const Report r = run_document_command("mackey", parsed, opt);
    CHECK(r.verdict() == Verdict::pass);
  }
}

TEST_CASE("reports are stable and carry reproductions on failure") {
  Options opt;
  opt.suite = "peterlem";
  const auto a = run_sweep(opt).to_json(std::nullopt).dump();
  const auto b = run_sweep(opt).to_json(std::nullopt).dump();
  CHECK(a == b);
  CHECK(a.find("timing_ms") == std::string::npos);

  Report r("x", ojson::object());
  r.check("one", true);
  r.set_reproduction(ojson{{"k", 1}});
  CHECK(r.verdict() == Verdict::pass);
  CHECK(!r.to_json(std::nullopt).contains("reproduction"));
  r.check("two", false);
  CHECK(r.verdict() == Verdict::fail);
  CHECK(r.to_json(std::nullopt).contains("reproduction"));
  CHECK(exit_code(r.verdict()) == 1);
  r.set_error("bad");
  CHECK(exit_code(r.verdict()) == 2);
}

TEST_CASE("sweep cases replay individually") {
  Options opt;
  opt.suite = "solver-oracle";
  opt.seed = 11;
  opt.case_index = 417;
  auto one = run_sweep(opt);
  CHECK(one.results()["cases"] == 1);
  CHECK(one.verdict() == Verdict::pass);
  opt.suite = "nope";
  CHECK_THROWS_AS(run_sweep(opt), InputError);
  opt.suite = "peterlem";
  opt.case_index = 50;
  CHECK_THROWS_AS(run_sweep(opt), InputError);
}
