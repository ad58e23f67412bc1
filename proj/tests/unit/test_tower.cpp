#include <doctest.h>

#include "oracles.hpp"
#include "profmod/catalog.hpp"
#include "profmod/error.hpp"
#include "profmod/tower.hpp"

using namespace profmod;

namespace {

Tower constant_tower(const FiniteBundle& b, std::size_t depth) {
  std::vector<FiniteBundle> levels(depth + 1, b);
  std::vector<BundleMorphism> trans(depth, BundleMorphism::identity(b));
  return Tower(levels, trans);
}

// phi : top -> two points {a, b}, sending the listed points to "a" by the
// identity on fibers of dimension one, everything else to "b" by zero.
BundleMorphism separating(const Tower& t, const FiniteBundle& target,
                          const std::vector<std::string>& to_a) {
  const auto& top = t.top();
  std::vector<std::size_t> sm;
  std::vector<Mat> fm;
  for (std::size_t x = 0; x < top.size(); ++x) {
    const bool a = std::find(to_a.begin(), to_a.end(), top.point(x)) != to_a.end();
    sm.push_back(a ? 0 : 1);
    fm.push_back(a ? Mat::identity(top.ring(), 1) : Mat(top.ring(), top.fiber(x).dim(), 1));
  }
  return BundleMorphism(top, target, sm, fm);
}

}  // namespace

TEST_CASE("constant towers pass the limit checks") {
  const ChainRing f2(2);
  auto t = constant_tower(FiniteBundle::group_free(f2, {1, 2}), 3);
  CHECK(t.depth() == 3);
  auto rep = tower_limit_checks(t);
  CHECK(rep.passed());
  CHECK(rep.limit_log_size == 3);
  CHECK(t.projection(3, 0) == BundleMorphism::identity(t.level(0)));
}

TEST_CASE("non-surjective transitions are rejected") {
  const ChainRing f2(2);
  auto lo = FiniteBundle::group_free(f2, {2});
  auto hi = FiniteBundle::group_free(f2, {1});
  BundleMorphism tr(hi, lo, {0}, {Mat::from_rows(f2, {{1, 0}})});
  try {
    Tower({lo, hi}, {tr});
    FAIL("expected TransitionNotSurjective");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TransitionNotSurjective);
  }
  auto two = FiniteBundle::group_free(f2, {1, 1});
  BundleMorphism miss(hi, two, {0}, {Mat::identity(f2, 1)});
  CHECK_THROWS_AS(Tower({two, hi}, {miss}), Error);
}

TEST_CASE("exproj towers") {
  const ChainRing f2(2);
  auto p = plain_module(f2, 1);
  auto ex = exproj_tower(p, 3);
  CHECK(ex.m.top().points() == std::vector<std::string>{"1", "2", "3", "*"});
  CHECK(ex.n.top().fiber(3).dim() == 0);
  CHECK(tower_limit_checks(ex.m).passed());
  CHECK(tower_limit_checks(ex.n).passed());
  // The epimorphisms commute with the transitions.
  for (std::size_t k = 0; k < 3; ++k)
    CHECK(compose(ex.m.transition(k), ex.epi[k]) == compose(ex.epi[k + 1], ex.n.transition(k)));
}

TEST_CASE("factoring through a level") {
  const ChainRing f2(2);
  auto ex = exproj_tower(plain_module(f2, 1), 3);
  const auto& t = ex.m;
  auto target = FiniteBundle::group_free(f2, {1, 1});

  auto phi2 = separating(t, target, {"2"});
  auto f = factor_through_level(t, target, phi2);
  CHECK(f.level == 2);
  CHECK(compose(t.projection(3, 2), f.factor) == phi2);
  CHECK(oracle::brute_factor_level(t, target, phi2) == 2u);

  auto phi1 = separating(t, target, {"1"});
  CHECK(factor_through_level(t, target, phi1).level == 1);

  auto zero = separating(t, target, {});
  CHECK(factor_through_level(t, target, zero).level == 0);

  CHECK_THROWS_AS(factor_through_level(t, target, phi2, std::make_pair(0, 1)), Error);
  CHECK(factor_through_level(t, target, phi2, std::make_pair(3, 3)).level == 3);
}

TEST_CASE("factor level agrees with brute force on random towers") {
  Rng rng(50);
  for (const auto& ring : {ChainRing(2), ChainRing(3), ChainRing(2, 2)}) {
    for (int i = 0; i < 10; ++i) {
      auto c = random_factor_case(ring, rng);
      CHECK(tower_limit_checks(c.tower).passed());
      auto f = factor_through_level(c.tower, c.target, c.phi);
      CHECK(f.level <= c.planted);
      CHECK(oracle::brute_factor_level(c.tower, c.target, c.phi) == f.level);
      CHECK(compose(c.tower.projection(c.tower.depth(), f.level), f.factor) == c.phi);
    }
  }
}

TEST_CASE("splitting obstruction") {
  const ChainRing f2(2);
  auto p = plain_module(f2, 1);
  auto d2 = splitting_obstruction(p, 2);
  CHECK(d2.every_level_splits);
  CHECK_FALSE(d2.compatible_family);
  CHECK(d2.witness_point == "2");

  auto d3 = splitting_obstruction(p, 3);
  CHECK(d3.splittings == std::vector<std::size_t>{1, 1, 1});
  CHECK_FALSE(d3.compatible_family);
  REQUIRE(d3.first_failure);
  CHECK(d3.first_failure->first == 1);
  CHECK(d3.first_failure->second == 2);
  CHECK(d3.witness_point == "2");

  auto zero = splitting_obstruction(plain_module(f2, 0), 3);
  CHECK(zero.every_level_splits);
  CHECK(zero.compatible_family);
  CHECK_FALSE(zero.witness_point);

  auto f3 = splitting_obstruction(plain_module(ChainRing(3), 2), 2);
  CHECK(f3.every_level_splits);
  CHECK_FALSE(f3.compatible_family);

  CHECK_THROWS_AS(splitting_obstruction(plain_module(ChainRing(5), 1), 2), Error);
  CHECK_THROWS_AS(splitting_obstruction(plain_module(f2, 3), 2), Error);
  CHECK_THROWS_AS(splitting_obstruction(plain_module(ChainRing(2, 2), 1), 2), Error);
}
