#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ecstat/core_types.hpp"
#include "ecstat/errors.hpp"

using namespace ecstat;

TEST_CASE("valuation basics") {
  CHECK(valuation(mpz_class(250), 5).v == 3);
  CHECK(valuation(mpz_class(-250), 5).v == 3);
  CHECK(valuation(mpz_class(7), 5).v == 0);
  CHECK(valuation(mpz_class(0), 5).is_infinite());
  CHECK(Valuation::infinity() > Valuation::of(1000000));
  CHECK(Valuation::of(3) >= 3u);
  CHECK(Valuation::of(3) < 4u);
}

TEST_CASE("pair construction enforces invariants") {
  CHECK_THROWS_AS(WeierstrassPair::make(mpz_class(-3), mpz_class(2)),
                  SingularCurveError);
  CHECK_THROWS_AS(WeierstrassPair::make(mpz_class(-12), mpz_class(16)),
                  SingularCurveError);
  // 2^4 | 16 and 2^6 | 64
  CHECK_THROWS_AS(WeierstrassPair::make(mpz_class(16), mpz_class(64)),
                  NotReducedError);
  CHECK_THROWS_AS(WeierstrassPair::make(mpz_class(0), mpz_class(64)),
                  NotReducedError);
  auto p = WeierstrassPair::make(mpz_class(16), mpz_class(63));
  CHECK(p.D() == 4 * 16 * 16 * 16 + 27 * 63 * 63);
  CHECK_THROWS_AS(WeierstrassPair::unchecked(mpz_class(-3), mpz_class(2)),
                  SingularCurveError);
}

TEST_CASE("height") {
  auto p = WeierstrassPair::make(mpz_class(-3), mpz_class(3));
  CHECK(height(p) == 27);
  auto q = WeierstrassPair::make(mpz_class(1), mpz_class(100));
  CHECK(height(q) == 10000);
}

TEST_CASE("census window bounds") {
  auto w = CensusWindow::for_height(mpz_class(100));
  CHECK(w.a_bound == 4);
  CHECK(w.b_bound == 10);
  auto w1 = CensusWindow::for_height(mpz_class(1));
  CHECK(w1.a_bound == 1);
  CHECK(w1.b_bound == 1);
  auto w8 = CensusWindow::for_height(mpz_class(100000000));
  CHECK(w8.a_bound == 464);
  CHECK(w8.b_bound == 10000);
  CHECK_THROWS_AS(CensusWindow::for_height(mpz_class(0)), std::invalid_argument);
}

TEST_CASE("singular locus enumerates (-3u^2, +-2u^3)") {
  auto w = CensusWindow::for_height(mpz_class(1000000));
  auto locus = singular_locus(w);
  // |3u^2| <= 100 limits u to [-5, 5]: 11 pairs including (0, 0)
  CHECK(locus.size() == 11);
  bool found = false;
  for (const auto& [a, b] : locus) {
    CHECK(4 * a * a * a + 27 * b * b == 0);
    if (a == -3 && b == 2) found = true;
  }
  CHECK(found);
}
