#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ecstat/errors.hpp"
#include "ecstat/kodaira.hpp"

using namespace ecstat;

namespace {

WeierstrassPair mk(long a, long b) {
  return WeierstrassPair::make(mpz_class(a), mpz_class(b));
}

}  // namespace

TEST_CASE("name / parse round trip") {
  const KodairaType types[] = {
      KodairaType::I0(),     KodairaType::I(1),      KodairaType::I(17),
      KodairaType::II(),     KodairaType::III(),     KodairaType::IV(),
      KodairaType::I0star(), KodairaType::Istar(2),  KodairaType::IVstar(),
      KodairaType::IIIstar(), KodairaType::IIstar()};
  for (const auto& t : types) {
    auto back = KodairaType::parse(t.name());
    REQUIRE(back.has_value());
    CHECK(*back == t);
  }
  CHECK(!KodairaType::parse("V"));
  CHECK(!KodairaType::parse(""));
  CHECK(KodairaType::parse("I0*") == KodairaType::I0star());
}

TEST_CASE("classification table at p = 5") {
  struct Row {
    long a, b;
    KodairaType want;
    unsigned dval;
  };
  const Row rows[] = {
      {1, 1, KodairaType::I0(), 0},
      {3, 1, KodairaType::I(1), 1},        // D = 135 = 27 * 5
      {5, 5, KodairaType::II(), 2},        // v(A)=1, v(B)=1
      {5, 25, KodairaType::III(), 3},      // v(A)=1, v(B)=2
      {25, 25, KodairaType::IV(), 4},      // v(A)=2, v(B)=2
      {25, 125, KodairaType::I0star(), 6},
      {125, 625, KodairaType::IVstar(), 8},
      {125, 3125, KodairaType::IIIstar(), 9},
      {625, 3125, KodairaType::IIstar(), 10},
  };
  for (const auto& r : rows) {
    auto lr = classify(mk(r.a, r.b), 5);
    CHECK(lr.type == r.want);
    CHECK(lr.discriminant_valuation == r.dval);
    CHECK(lr.conductor_exponent == r.want.conductor_exponent());
    CHECK(r.want.discriminant_valuation() == r.dval);
    CHECK(classify_i64(r.a, r.b, 5) == r.want);
  }
}

TEST_CASE("In* needs discriminant cancellation") {
  // (A, B) = (25 a0, 125 b0) with I_n at (a0, b0): v(D) = n + 6
  // a0 = 3, b0 = 1 has type I1, so (75, 125) has type I1*
  auto lr = classify(mk(75, 125), 5);
  CHECK(lr.type == KodairaType::Istar(1));
  CHECK(lr.discriminant_valuation == 7);
}

TEST_CASE("non-minimal pairs recurse in the int64 path") {
  // (5^4 * 3, 5^6) is not reduced; classify_i64 minimizes to (3, 1) = I1
  CHECK(classify_i64(625 * 3, 15625, 5) == KodairaType::I(1));
}

TEST_CASE("prime validation") {
  CHECK_THROWS_AS(classify(mk(1, 1), 3), BadPrimeError);
  CHECK_THROWS_AS(classify(mk(1, 1), 9), BadPrimeError);
  CHECK_THROWS_AS(twist_by_p(mk(1, 1), 4), BadPrimeError);
}

TEST_CASE("classify agrees with classify_i64 on a dense window") {
  for (long a = -30; a <= 30; ++a) {
    for (long b = -30; b <= 30; ++b) {
      if (4 * a * a * a + 27 * b * b == 0) continue;
      // no prime q has q^4 | a, q^6 | b in this window except q^4 | 0
      if (a == 0 && b == 0) continue;
      auto pair = WeierstrassPair::unchecked(mpz_class(a), mpz_class(b));
      for (long p : {5L, 7L}) CHECK(classify(pair, p).type == classify_i64(a, b, p));
    }
  }
}

namespace {

KodairaType expected_twist(const KodairaType& t) {
  using Tag = KodairaType::Tag;
  switch (t.tag) {
    case Tag::I0: return KodairaType::I0star();
    case Tag::In: return KodairaType::Istar(t.n);
    case Tag::II: return KodairaType::IVstar();
    case Tag::III: return KodairaType::IIIstar();
    case Tag::IV: return KodairaType::IIstar();
    case Tag::I0star: return KodairaType::I0();
    case Tag::Instar: return KodairaType::I(t.n);
    case Tag::IVstar: return KodairaType::II();
    case Tag::IIIstar: return KodairaType::III();
    case Tag::IIstar: return KodairaType::IV();
  }
  return KodairaType::I0();
}

}  // namespace

TEST_CASE("twist pairing and involution") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<long> da(-2000, 2000), db(-20000, 20000);
  int tested = 0;
  while (tested < 500) {
    const long a = da(rng), b = db(rng);
    if (4 * a * a * a + 27 * b * b == 0) continue;
    WeierstrassPair pair = [&] {
      try {
        return WeierstrassPair::make(mpz_class(a), mpz_class(b));
      } catch (const NotReducedError&) {
        return WeierstrassPair::make(mpz_class(1), mpz_class(1));
      }
    }();
    ++tested;
    for (long p : {5L, 7L, 11L}) {
      auto before = classify(pair, p).type;
      auto twisted = twist_by_p(pair, p);
      CHECK(classify(twisted, p).type == expected_twist(before));
      CHECK(twist_by_p(twisted, p) == pair);
    }
  }
}

TEST_CASE("bad primes and conductor") {
  auto pair = mk(3, 1);  // D = 135 = 3^3 * 5
  auto bad = bad_primes_ge5(pair);
  REQUIRE(bad.size() == 1);
  CHECK(*bad.begin() == 5);
  CHECK(conductor_star(pair) == 5);  // I1 at 5: exponent 1

  auto add = mk(25, 125);  // D = 5^6 * 31: I0* at 5 (exponent 2), I1 at 31
  CHECK(conductor_star(add) == 775);
}
