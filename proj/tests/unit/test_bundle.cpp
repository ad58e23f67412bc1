#include <doctest.h>

#include "oracles.hpp"
#include "profmod/bundle.hpp"
#include "profmod/catalog.hpp"
#include "profmod/error.hpp"

using namespace profmod;

namespace {

FiniteBundle mixed_bundle(const ChainRing& r, const GroupPtr& g, Rng& rng, std::size_t points) {
  std::vector<std::string> names;
  std::vector<GModule> fibers;
  for (std::size_t i = 0; i < points; ++i) {
    names.push_back("x" + std::to_string(i));
    fibers.push_back(rng.coin() ? random_dim2_module(r, g, rng) : random_module(r, g, rng, 3));
  }
  return FiniteBundle(r, g, names, fibers);
}

}  // namespace

TEST_CASE("bundle validation") {
  const ChainRing f2(2);
  auto c2 = cyclic_group(2);
  auto t = GModule::trivial(f2, c2);
  CHECK_THROWS_AS(FiniteBundle(f2, c2, {"a", "a"}, {t, t}), Error);
  CHECK_THROWS_AS(FiniteBundle(f2, c2, {"a"}, {GModule::trivial(ChainRing(3), c2)}), Error);
  CHECK_THROWS_AS(FiniteBundle(f2, c2, {"a"}, {GModule::trivial(f2, cyclic_group(3))}), Error);

  FiniteBundle b(f2, c2, {"a", "b"}, {t, GModule::regular(f2, c2)});
  CHECK(b.total_dim() == 3);
  CHECK(b.index_of("b") == 1u);
  CHECK_FALSE(b.index_of("c"));

  // A map regular -> trivial must be the augmentation; [1, 0] is not G-linear.
  auto pt = point_bundle(t);
  try {
    BundleMorphism(b, pt, {0, 0}, {Mat::identity(f2, 1), Mat::from_rows(f2, {{1}, {0}})});
    FAIL("expected InvalidMorphism");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidMorphism);
    CHECK(std::string(e.what()).find("'b'") != std::string::npos);
  }
  BundleMorphism ok(b, pt, {0, 0}, {Mat::identity(f2, 1), Mat::from_rows(f2, {{1}, {1}})});
  CHECK(compose(BundleMorphism::identity(b), ok) == ok);
}

TEST_CASE("direct sum has the universal property") {
  Rng rng(40);
  for (const auto& ring : {ChainRing(2), ChainRing(3), ChainRing(2, 2)}) {
    for (const char* name : {"C1", "C2", "S3"}) {
      auto g = builtin_group(name);
      auto b = mixed_bundle(ring, g, rng, 3);
      auto s = direct_sum(b);
      CHECK(s.sum.dim() == b.total_dim());
      auto n = random_module(ring, g, rng, 3);
      // Fiber maps built from a map out of the sum factor uniquely through it.
      auto homs = hom_basis(s.sum, n);
      Mat f(ring, s.sum.dim(), n.dim());
      for (const auto& h : homs)
        if (rng.coin()) f = f + h.matrix();
      std::vector<Mat> fibers;
      for (std::size_t x = 0; x < b.size(); ++x) fibers.push_back(s.injections[x].matrix() * f);
      auto fac = factor_through_sum(b, n, fibers);
      REQUIRE(fac.factor);
      CHECK(fac.unique);
      CHECK(fac.factor->matrix() == f);
    }
  }
}

TEST_CASE("sum map is functorial") {
  const ChainRing f3(3);
  auto s3 = symmetric3();
  Rng rng(41);
  auto b = mixed_bundle(f3, s3, rng, 3);
  auto id = BundleMorphism::identity(b);
  CHECK(sum_map(id).matrix().is_identity());
  auto s = direct_sum(b);
  auto to_pt = s.to_point;
  auto composite = compose(id, to_pt);
  CHECK(sum_map(composite).matrix() == sum_map(to_pt).matrix());
  CHECK(sum_map(to_pt).bijective());
}

TEST_CASE("cosheaf check") {
  const ChainRing f2(2);
  auto b = FiniteBundle::group_free(f2, {1, 0, 2});
  auto c = cosheaf_check(b);
  CHECK(c.passed);
  CHECK(c.subsets == 8);
  // Partitions into at most three blocks: sizes 0..3 give 1 + 3*1 + 3*2 + 5.
  CHECK(c.partitions == 1 + 3 + 6 + 5);
  CHECK(cosection(b, {0, 2}).dim() == 3);
  CHECK(cosection(b, {}).dim() == 0);
  CHECK_THROWS_AS(cosection(b, {3}), Error);
  CHECK_THROWS_AS(cosheaf_check(FiniteBundle::group_free(f2, std::vector<std::size_t>(11, 1))),
                  Error);
}

TEST_CASE("cosection tables round-trip") {
  Rng rng(42);
  for (const auto& ring : {ChainRing(2), ChainRing(3, 2)}) {
    auto g = builtin_group("C2");
    auto b = mixed_bundle(ring, g, rng, 3);
    auto t = bundle_to_cosheaf(b);
    CHECK(t.values.size() == 8);
    CHECK(t.extension.size() == 27);
    CHECK_NOTHROW(check_cosheaf_table(t));
    CHECK(cosheaf_to_bundle(t) == b);
    CHECK(tables_canonically_isomorphic(t, bundle_to_cosheaf(cosheaf_to_bundle(t))));
  }
}

TEST_CASE("broken cosheaf tables are rejected") {
  const ChainRing f2(2);
  auto b = FiniteBundle::group_free(f2, {1, 1});
  auto t = bundle_to_cosheaf(b);
  // Zero out an extension map: the partition {0}|{1} of {0,1} no longer spans.
  t.extension.at({1, 3}) = Mat(f2, 1, 2);
  try {
    check_cosheaf_table(t);
    FAIL("expected NotACosheaf");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotACosheaf);
  }
  auto t2 = bundle_to_cosheaf(b);
  t2.values[0] = plain_module(f2, 1);
  t2.extension.at({0, 0}) = Mat::identity(f2, 1);
  CHECK_THROWS_AS(check_cosheaf_table(t2), Error);
}

TEST_CASE("restriction of scalars commutes with sums") {
  Rng rng(43);
  for (const auto& [name, g] : builtin_groups(8)) {
    auto b = mixed_bundle(ChainRing(2), g, rng, 2);
    for (const auto& h : all_subgroups(g)) CHECK(restriction_commutes_with_sum(b, h));
  }
}

TEST_CASE("products, equalizers and coproducts") {
  const ChainRing f3(3);
  auto c3 = cyclic_group(3);
  Rng rng(44);
  auto a = mixed_bundle(f3, c3, rng, 2);
  auto b = mixed_bundle(f3, c3, rng, 3);

  auto p = bundle_product(a, b);
  CHECK(p.bundle.size() == 6);
  CHECK(p.bundle.point(4) == "(x1,x1)");
  auto from_a = BundleMorphism::identity(a);
  // A -> B sending everything to x0 with zero fiber maps.
  std::vector<Mat> zeros;
  for (std::size_t x = 0; x < a.size(); ++x) zeros.push_back(Mat(f3, a.fiber(x).dim(), b.fiber(0).dim()));
  BundleMorphism to_b(a, b, {0, 0}, zeros);
  auto pr = pairing(p, from_a, to_b);
  CHECK(compose(pr, p.first) == from_a);
  CHECK(compose(pr, p.second) == to_b);

  auto c = bundle_coproduct(a, b);
  CHECK(c.bundle.size() == 5);
  auto cp = copairing(c, to_b, BundleMorphism::identity(b));
  CHECK(compose(c.first, cp) == to_b);
  CHECK(compose(c.second, cp) == BundleMorphism::identity(b));

  // Equalizer of the identity with itself is everything; with zero, the kernel.
  auto id = BundleMorphism::identity(a);
  auto e = bundle_equalizer(id, id);
  CHECK(e.bundle == a);
  std::vector<Mat> zf;
  for (std::size_t x = 0; x < a.size(); ++x) zf.push_back(Mat(f3, a.fiber(x).dim(), a.fiber(x).dim()));
  BundleMorphism zero(a, a, {0, 1}, zf);
  auto ez = bundle_equalizer(id, zero);
  for (std::size_t x = 0; x < ez.bundle.size(); ++x) CHECK(ez.bundle.fiber(x).dim() == 0);
  auto lift = equalizer_lift(e, id);
  CHECK(compose(lift, e.inclusion) == id);
  CHECK_THROWS_AS(equalizer_lift(ez, id), Error);
}
