#include <doctest.h>

#include "oracles.hpp"
#include "profmod/catalog.hpp"
#include "profmod/error.hpp"
#include "profmod/mackey.hpp"

using namespace profmod;

namespace {

std::size_t element(const GroupPtr& g, const Perm& p) { return *g->index_of(p); }

}  // namespace

TEST_CASE("group algebra decomposition") {
  const ChainRing f2(2);
  auto s3 = symmetric3();
  auto h = Subgroup::generated(s3, {element(s3, {1, 0, 2})});
  auto d = decompose_group_algebra(f2, h, h);
  CHECK(d.passed());
  std::vector<std::size_t> dims;
  for (const auto& p : d.parts) dims.push_back(p.dim());
  std::sort(dims.begin(), dims.end());
  CHECK(dims == std::vector<std::size_t>{2, 4});
  for (const auto& p : d.parts) CHECK(p.is_consistent());

  auto whole = decompose_group_algebra(f2, Subgroup::whole(s3), h);
  CHECK(whole.parts.size() == 1);
  CHECK(whole.parts[0].dim() == 6);
  auto triv = decompose_group_algebra(f2, Subgroup::trivial(s3), Subgroup::trivial(s3));
  CHECK(triv.parts.size() == 6);

  CHECK_THROWS_AS(decompose_group_algebra(f2, h, Subgroup::whole(cyclic_group(2))), Error);
}

TEST_CASE("HgK factorization") {
  const ChainRing f2(2);
  auto s3 = symmetric3();
  auto h = Subgroup::generated(s3, {element(s3, {1, 0, 2})});
  auto f = hgk_factorization(f2, h, h, element(s3, {2, 1, 0}));
  CHECK(f.passed());
  CHECK(f.cell_size == 4);
  CHECK(f.hg_size == 2);
  CHECK(f.intersection_size == 1);

  auto unit = hgk_factorization(f2, h, h, 0);
  CHECK(unit.passed());
  CHECK(unit.cell_size == 2);

  auto t = hgk_factorization(f2, Subgroup::trivial(s3), h, element(s3, {1, 2, 0}));
  CHECK(t.passed());
  CHECK(t.cell_size == 2);

  Rng rng(70);
  for (const auto& [name, g] : builtin_groups(8)) {
    auto subs = all_subgroups(g);
    for (int i = 0; i < 6; ++i) {
      const auto& a = subs[rng.below(subs.size())];
      const auto& b = subs[rng.below(subs.size())];
      CAPTURE(name);
      CHECK(hgk_factorization(ChainRing(3), a, b, rng.below(g->order())).passed());
    }
  }
}

TEST_CASE("Mackey golden case") {
  const ChainRing f2(2);
  auto s3 = symmetric3();
  auto h = Subgroup::generated(s3, {element(s3, {1, 0, 2})});
  auto rep = mackey_verify(f2, h, h, GModule::trivial(f2, h.group()));
  CHECK(rep.passed());
  CHECK(rep.lhs.dim() == 3);
  REQUIRE(rep.components.size() == 2);
  CHECK(rep.components[0].dim == 1);
  CHECK(rep.components[1].dim == 2);
  REQUIRE(rep.iso);
  CHECK(rep.iso->bijective());
}

TEST_CASE("Mackey with a single double coset") {
  const ChainRing f2(2);
  auto s3 = symmetric3();
  auto h = Subgroup::generated(s3, {element(s3, {1, 2, 0})});
  auto k = Subgroup::generated(s3, {element(s3, {1, 0, 2})});
  auto rep = mackey_verify(f2, h, k, GModule::trivial(f2, h.group()));
  CHECK(rep.passed());
  CHECK(rep.components.size() == 1);
  CHECK(rep.lhs.dim() == 2);
  // Regular K-module, witnessed by the hom solver.
  auto reg = GModule::regular(f2, k.group());
  bool found = false;
  for (const auto& f : hom_basis(rep.lhs, reg))
    if (f.bijective()) found = true;
  CHECK((found || oracle::count_intertwiners(rep.lhs, reg) > 0));
  CHECK(rep.rhs_sum.dim() == 2);
}

TEST_CASE("Mackey with K = G is the identity") {
  const ChainRing f3(3);
  auto s3 = symmetric3();
  auto h = Subgroup::generated(s3, {element(s3, {1, 0, 2})});
  Rng rng(71);
  auto m = random_dim2_module(f3, h.group(), rng);
  auto rep = mackey_verify(f3, h, Subgroup::whole(s3), m);
  CHECK(rep.passed());
  CHECK(rep.components.size() == 1);
  CHECK(rep.map.is_identity());
}

TEST_CASE("Mackey across subgroup pairs and representatives") {
  Rng rng(72);
  for (const auto& ring : {ChainRing(2), ChainRing(3), ChainRing(2, 2)}) {
    for (const char* name : {"S3", "D8", "Q8", "A4"}) {
      auto g = builtin_group(name);
      auto subs = all_subgroups(g);
      for (int i = 0; i < 4; ++i) {
        const auto& h = subs[rng.below(subs.size())];
        const auto& k = subs[rng.below(subs.size())];
        auto m = random_module(ring, h.group(), rng, 4);
        CAPTURE(name);
        auto rep = mackey_verify(ring, h, k, m);
        CHECK(rep.passed());
        // Random representatives of the same cells.
        auto dc = double_coset_reps(h, k);
        std::vector<std::size_t> reps;
        for (const auto& cell : dc.cells) reps.push_back(cell[rng.below(cell.size())]);
        auto other = mackey_verify(ring, h, k, m, reps);
        CHECK(other.passed());
        CHECK(other.rhs_sum.dim() == rep.rhs_sum.dim());
        for (std::size_t c = 0; c < rep.components.size(); ++c)
          CHECK(other.components[c].dim == rep.components[c].dim);
      }
    }
  }
}

TEST_CASE("Mackey input validation") {
  const ChainRing f2(2);
  auto s3 = symmetric3();
  auto h = Subgroup::generated(s3, {element(s3, {1, 0, 2})});
  CHECK_THROWS_AS(mackey_verify(f2, h, h, GModule::trivial(f2, s3)), Error);
  CHECK_THROWS_AS(mackey_verify(f2, h, Subgroup::whole(cyclic_group(3)), GModule::trivial(f2, h.group())),
                  Error);
  CHECK_THROWS_AS(mackey_verify(f2, h, h, GModule::trivial(f2, h.group()), std::vector<std::size_t>{0, 0}),
                  Error);
}
