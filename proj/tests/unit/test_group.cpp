#include <doctest.h>

#include <algorithm>
#include <set>

#include "profmod/catalog.hpp"
#include "profmod/error.hpp"
#include "profmod/group.hpp"

using namespace profmod;

namespace {

std::size_t element(const GroupPtr& g, const Perm& p) { return *g->index_of(p); }

// Closure by repeated multiplication until nothing new appears.
std::set<Perm> naive_closure(const std::vector<Perm>& gens, std::size_t degree) {
  std::set<Perm> all{identity_perm(degree)};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Perm> cur(all.begin(), all.end());
    for (const auto& a : cur)
      for (const auto& s : gens)
        if (all.insert(compose(a, s)).second) grew = true;
  }
  return all;
}

}  // namespace

TEST_CASE("close_generators examples") {
  auto s3 = symmetric3();
  CHECK(s3->order() == 6);
  CHECK(s3->element(0) == identity_perm(3));
  CHECK(FiniteGroup::close_generators({}, 3)->order() == 1);
  CHECK(FiniteGroup::close_generators({{1, 2, 3, 0}}, 4)->order() == 4);
  CHECK_THROWS_AS(FiniteGroup::close_generators({{0, 0, 1}}, 3), Error);
  CHECK_THROWS_AS(FiniteGroup::close_generators({{1, 0, 2, 3, 4, 5, 6, 7},
                                                 {1, 2, 3, 4, 5, 6, 7, 0}},
                                                8),
                  Error);
  try {
    FiniteGroup::close_generators({{1, 0, 2, 3}, {1, 2, 3, 0}}, 4, 10);
    FAIL("expected GroupTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GroupTooLarge);
  }
}

TEST_CASE("built-in groups have the expected orders") {
  const std::vector<std::pair<std::string, std::size_t>> expected = {
      {"C1", 1}, {"C2", 2}, {"C3", 3},   {"C4", 4},    {"C5", 5},   {"C6", 6},   {"S3", 6},
      {"V4", 4}, {"D8", 8}, {"Q8", 8}, {"C2^3", 8}, {"D10", 10}, {"D12", 12}, {"A4", 12}};
  for (const auto& [name, order] : expected) {
    CAPTURE(name);
    auto g = builtin_group(name);
    CHECK(g->order() == order);
    std::vector<Perm> gens;
    for (auto s : g->generators()) gens.push_back(g->element(s));
    CHECK(naive_closure(gens, g->degree()).size() == order);
  }
  CHECK_THROWS_AS(builtin_group("nope"), Error);
  // Q8 has a unique involution.
  auto q8 = quaternion8();
  int involutions = 0;
  for (std::size_t x = 1; x < 8; ++x) involutions += q8->mul(x, x) == 0;
  CHECK(involutions == 1);
}

TEST_CASE("group laws") {
  Rng rng(17);
  for (const auto& [name, g] : builtin_groups(24)) {
    CAPTURE(name);
    for (std::size_t a = 0; a < g->order(); ++a) {
      CHECK(g->mul(a, g->inv(a)) == 0);
      CHECK(g->mul(g->inv(a), a) == 0);
      CHECK(g->mul(a, 0) == a);
    }
    for (int t = 0; t < 100; ++t) {
      const std::size_t a = rng.below(g->order()), b = rng.below(g->order()),
                        c = rng.below(g->order());
      CHECK(g->mul(g->mul(a, b), c) == g->mul(a, g->mul(b, c)));
      CHECK(g->element(g->mul(a, b)) == compose(g->element(a), g->element(b)));
    }
    for (std::size_t i = 1; i < g->order(); ++i)
      CHECK(g->mul(g->parent(i), g->generators()[g->parent_generator(i)]) == i);
  }
}

TEST_CASE("right cosets") {
  auto s3 = symmetric3();
  const auto h = Subgroup::generated(s3, {element(s3, {1, 0, 2})});
  const auto reps = right_coset_reps(h);
  CHECK(reps.size() == 3);
  std::set<std::size_t> seen;
  for (auto t : reps)
    for (auto x : h.members()) CHECK(seen.insert(s3->mul(x, t)).second);
  CHECK(seen.size() == 6);
  CHECK(right_coset_reps(Subgroup::whole(s3)) == std::vector<std::size_t>{0});
  CHECK(right_coset_reps(Subgroup::trivial(s3)).size() == 6);
}

TEST_CASE("double cosets") {
  auto s3 = symmetric3();
  const auto h = Subgroup::generated(s3, {element(s3, {1, 0, 2})});
  auto d = double_coset_reps(h, h);
  REQUIRE(d.size() == 2);
  std::vector<std::size_t> sizes{d.cells[0].size(), d.cells[1].size()};
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{2, 4});

  CHECK(double_coset_reps(Subgroup::whole(s3), h).size() == 1);
  const auto c3 = Subgroup::generated(s3, {element(s3, {1, 2, 0})});
  auto one = double_coset_reps(c3, h);
  REQUIRE(one.size() == 1);
  CHECK(one.cells[0].size() == 6);

  CHECK_THROWS_AS(double_coset_reps(h, Subgroup::whole(cyclic_group(2))), Error);
}

TEST_CASE("double coset cells are unions of one-sided cosets") {
  for (const auto& [name, g] : builtin_groups(24)) {
    CAPTURE(name);
    const auto subs = all_subgroups(g);
    for (const auto& h : subs)
      for (const auto& k : subs) {
        auto d = double_coset_reps(h, k);
        std::set<std::size_t> covered;
        for (std::size_t c = 0; c < d.size(); ++c) {
          const std::set<std::size_t> cell(d.cells[c].begin(), d.cells[c].end());
          for (auto x : cell) {
            CHECK(covered.insert(x).second);
            for (auto a : h.members()) CHECK(cell.count(g->mul(a, x)) == 1);
            for (auto b : k.members()) CHECK(cell.count(g->mul(x, b)) == 1);
          }
          const std::size_t r = d.reps[c];
          const auto meet = intersect(k, conjugate(h, r));
          CHECK(cell.size() * meet.order() == h.order() * k.order());
        }
        CHECK(covered.size() == g->order());
      }
  }
}

TEST_CASE("subgroup enumeration") {
  CHECK(all_subgroups(symmetric3()).size() == 6);
  CHECK(all_subgroups(alternating4()).size() == 10);
  CHECK(all_subgroups(dihedral_group(4)).size() == 10);
  CHECK(all_subgroups(quaternion8()).size() == 6);
  CHECK(all_subgroups(dihedral_group(6)).size() == 16);
  CHECK_THROWS_AS(Subgroup::from_members(symmetric3(), {0, 1, 2}), Error);
}

TEST_CASE("orbits and stabilizers") {
  auto s3 = symmetric3();
  auto reg = orbits(GSpace::regular(s3));
  REQUIRE(reg.size() == 1);
  CHECK(reg[0].stabilizer.order() == 1);

  auto fixed = orbits(GSpace::trivial(s3, 3));
  REQUIRE(fixed.size() == 3);
  for (const auto& o : fixed) CHECK(o.stabilizer.order() == 6);

  const auto h = Subgroup::generated(s3, {element(s3, {1, 0, 2})});
  auto cos = orbits(GSpace::cosets(h));
  REQUIRE(cos.size() == 1);
  CHECK(cos[0].stabilizer.order() == 2);

  Rng rng(2);
  for (const auto& [name, g] : builtin_groups(12)) {
    for (int t = 0; t < 5; ++t) {
      const GSpace sp = random_gspace(g, rng);
      std::size_t total = 0;
      for (const auto& o : orbits(sp)) {
        CHECK(o.points.size() * o.stabilizer.order() == g->order());
        for (auto x : o.stabilizer.members()) CHECK(sp.act(o.representative, x) == o.representative);
        total += o.points.size();
      }
      CHECK(total == sp.points());
    }
  }
}

TEST_CASE("invalid actions are rejected") {
  auto c2 = cyclic_group(2);
  CHECK_THROWS_AS(GSpace(c2, 3, {{1, 2, 0}}), Error);  // order 3 action of an involution
  CHECK_THROWS_AS(GSpace(c2, 2, {{0, 0}}), Error);
}
