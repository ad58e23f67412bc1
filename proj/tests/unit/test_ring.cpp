#include <doctest.h>

#include "oracles.hpp"
#include "profmod/catalog.hpp"
#include "profmod/error.hpp"
#include "profmod/ring.hpp"

using namespace profmod;

TEST_CASE("chain ring arithmetic") {
  CHECK_THROWS_AS(ChainRing(6), Error);
  CHECK_THROWS_AS(ChainRing(2, 0), Error);
  ChainRing z9(3, 2);
  CHECK(z9.modulus() == 9);
  CHECK(z9.reduce(-1) == 8);
  CHECK(z9.valuation(0) == 2);
  CHECK(z9.valuation(3) == 1);
  CHECK(z9.valuation(4) == 0);
  CHECK(z9.mul(z9.inverse(4), 4) == 1);
  CHECK_THROWS_AS(z9.inverse(3), Error);
  CHECK(ChainRing(5).global_dimension() == 0u);
  CHECK_FALSE(z9.global_dimension().has_value());
  CHECK(ChainRing(2).name() == "F_2");
  CHECK(ChainRing(2, 2).name() == "Z/4");
}

TEST_CASE("howell form examples") {
  ChainRing z4(2, 2);
  CHECK(howell_form(Mat::identity(z4, 2)) == Mat::identity(z4, 2));
  CHECK(howell_form(Mat::from_rows(z4, {{2}})) == Mat::from_rows(z4, {{2}}));
  const Mat a = Mat::from_rows(z4, {{1, 1}, {0, 2}});
  const Mat h = howell_form(a);
  CHECK(oracle::row_span(h).size() == 8);
  CHECK(oracle::row_span(a) == oracle::row_span(h));
  CHECK(log_size(h) == 3);

  // [[2, 1]] spans {0, (2,1), (0,2), (2,3)}; the Howell form must expose (0,2).
  const Mat b = howell_form(Mat::from_rows(z4, {{2, 1}}));
  CHECK(in_row_span(b, Vec{0, 2}));
  CHECK(b.rows() == 2);
}

TEST_CASE("howell form over a field is the reduced echelon form") {
  ChainRing f3(3);
  const Mat a = Mat::from_rows(f3, {{0, 2, 1}, {1, 1, 1}, {1, 0, 2}});
  CHECK(howell_form(a) == Mat::from_rows(f3, {{1, 0, 2}, {0, 1, 2}}));
}

TEST_CASE("howell form is idempotent and keeps the row span") {
  ChainRing z4(2, 2);
  Rng rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const Mat a = random_matrix(z4, 1 + rng.below(3), 1 + rng.below(3), rng);
    const Mat h = howell_form(a);
    CHECK(howell_form(h) == h);
    CHECK(oracle::row_span(h) == oracle::row_span(a));
    CHECK((std::size_t{1} << log_size(h)) == oracle::row_span(a).size());
  }
}

TEST_CASE("solve_affine examples") {
  ChainRing z4(2, 2), f3(3);
  {
    auto s = solve_affine(Mat::from_rows(z4, {{2}}), Vec{2});
    REQUIRE(s.solvable());
    CHECK(*s.particular == Vec{1});
    CHECK(s.kernel_basis == Mat::from_rows(z4, {{2}}));
    CHECK(oracle::expand(s, 1, z4) == std::set<Vec>{{1}, {3}});
  }
  {
    auto s = solve_affine(Mat::identity(f3, 3), Vec{0, 0, 0});
    CHECK(s.unique());
    CHECK(*s.particular == Vec{0, 0, 0});
  }
  {
    auto s = solve_affine(Mat::from_rows(f3, {{1}, {2}}), Vec{0});
    REQUIRE(s.solvable());
    CHECK(s.kernel_basis.rows() == 1);
    CHECK(oracle::expand(s, 2, f3).size() == 3);
  }
  CHECK_FALSE(solve_affine(Mat::from_rows(z4, {{2}}), Vec{1}).solvable());
  CHECK_THROWS_AS(solve_affine(Mat::from_rows(z4, {{2}}), Vec{1, 1}), Error);
}

TEST_CASE("solve_affine agrees with enumeration") {
  for (const auto& ring : {ChainRing(2, 2), ChainRing(2, 3), ChainRing(3, 2), ChainRing(2),
                           ChainRing(3)}) {
    Rng rng(1000 + ring.modulus());
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t unknowns = 1 + rng.below(4);
      const std::size_t eqs = 1 + rng.below(4);
      const Mat a = random_matrix(ring, unknowns, eqs, rng);
      Vec b(eqs);
      if (rng.coin()) {
        Vec x(unknowns);
        for (auto& e : x) e = rng.below(ring.modulus());
        b = times(x, a);
      } else {
        for (auto& e : b) e = rng.below(ring.modulus());
      }
      const auto s = solve_affine(a, b);
      CHECK(oracle::expand(s, unknowns, ring) == oracle::solutions(a, b));
    }
  }
}

TEST_CASE("rank profile") {
  ChainRing f2(2), z4(2, 2);
  auto zero = rank_profile(Mat(f2, 2, 2));
  CHECK(zero.image_size() == 1);
  CHECK(zero.kernel_size() == 4);
  auto id = rank_profile(Mat::identity(f2, 2));
  CHECK(id.image_size() == 4);
  CHECK(id.kernel_size() == 1);
  auto two = rank_profile(Mat::from_rows(z4, {{2}}));
  CHECK(two.image_size() == 2);
  CHECK(two.kernel_size() == 2);

  Rng rng(5);
  for (const auto& ring : {ChainRing(2, 2), ChainRing(2, 3), ChainRing(3, 2), ChainRing(3)}) {
    for (int trial = 0; trial < 50; ++trial) {
      const Mat a = random_matrix(ring, 1 + rng.below(4), 1 + rng.below(4), rng);
      auto r = rank_profile(a);
      CHECK(r.image_log + r.kernel_log == a.rows() * ring.k());
    }
  }
}

TEST_CASE("inverse and free quotients") {
  ChainRing z9(3, 2);
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat p = random_invertible(z9, 3, rng);
    CHECK(is_invertible(p));
    CHECK((p * inverse(p)).is_identity());
  }
  CHECK_FALSE(is_invertible(Mat::from_rows(z9, {{3}})));
  CHECK_THROWS_AS(inverse(Mat::from_rows(z9, {{3}})), Error);

  const Mat rel = Mat::from_rows(z9, {{1, 2, 0}, {2, 4, 0}});
  const Quotient q = free_quotient(rel);
  CHECK(q.dim == 2);
  CHECK((q.section * q.projection).is_identity());
  CHECK((rel * q.projection).is_zero());
  CHECK_THROWS_AS(free_quotient(Mat::from_rows(z9, {{3, 0}})), Error);

  CHECK(free_basis(Mat::from_rows(z9, {{1, 3}, {2, 6}})).rows() == 1);
  CHECK_THROWS_AS(free_basis(Mat::from_rows(z9, {{3, 0}})), Error);
}

TEST_CASE("coordinates in a free basis") {
  ChainRing z4(2, 2);
  const Mat basis = Mat::from_rows(z4, {{1, 1, 0}, {0, 1, 3}});
  const Mat coeffs = Mat::from_rows(z4, {{2, 3}, {1, 0}});
  CHECK(coordinates(basis, coeffs * basis) == coeffs);
  CHECK_THROWS_AS(coordinates(basis, Mat::from_rows(z4, {{0, 0, 1}})), Error);
}
