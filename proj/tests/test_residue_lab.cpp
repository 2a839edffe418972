#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ecstat/densities.hpp"
#include "ecstat/errors.hpp"
#include "ecstat/residue_lab.hpp"

using namespace ecstat;

TEST_CASE("cusp curve counts") {
  // #{(A,B) mod p : 4A^3 + 27B^2 = 0} = p (cuspidal cubic), p - 1 nonsingular
  CHECK(cusp_curve_count(5, 1, CuspConstraint::all) == 5);
  CHECK(cusp_curve_count(5, 1, CuspConstraint::nonsingular_only) == 4);
  CHECK(cusp_curve_count(7, 1, CuspConstraint::nonsingular_only) == 6);
  // mod p^2: p(p-1) nonsingular solutions plus p^2 from the (0,0) branch
  CHECK(cusp_curve_count(5, 2, CuspConstraint::nonsingular_only) == 20);
  CHECK(cusp_curve_count(5, 2, CuspConstraint::all) == 45);
  CHECK_THROWS_AS(cusp_curve_count(5, 20, CuspConstraint::all), BoxTooLargeError);
  CHECK_THROWS_AS(cusp_curve_count(4, 1, CuspConstraint::all), BadPrimeError);
}

TEST_CASE("closed-form class counts") {
  auto i1 = class_count_closed_form(KodairaType::I(1), 5);
  CHECK(i1.count == 80);
  CHECK(i1.modulus_a == 25);
  CHECK(i1.modulus_b == 25);
  auto ii = class_count_closed_form(KodairaType::II(), 5);
  CHECK(ii.count == 4);
  CHECK(ii.modulus_a == 5);
  CHECK(ii.modulus_b == 25);
  auto i0s = class_count_closed_form(KodairaType::I0star(), 7);
  CHECK(i0s.count == 42);
  CHECK(i0s.modulus_a == 343);
  CHECK(i0s.modulus_b == 2401);
  CHECK_THROWS_AS(class_count_closed_form(KodairaType::I0(), 5), BadTypeError);
}

TEST_CASE("box census matches closed form at p = 5") {
  for (auto t : {KodairaType::I(1), KodairaType::I(2), KodairaType::II(),
                 KodairaType::III(), KodairaType::IV(), KodairaType::I0star(),
                 KodairaType::Istar(1), KodairaType::IVstar(), KodairaType::IIIstar(),
                 KodairaType::IIstar()}) {
    auto r = box_census(t, 5);
    CHECK(r.match);
    CHECK(r.closed_form == r.brute_force);
  }
}

TEST_CASE("box density equals the absolute proportion exactly") {
  for (auto t : {KodairaType::I(1), KodairaType::II(), KodairaType::I0star(),
                 KodairaType::IIstar()}) {
    auto cc = class_count_closed_form(t, 5);
    ExactQ density(cc.count, cc.modulus_a * cc.modulus_b);
    density.canonicalize();
    CHECK(density == proportion_absolute(t, 5));
  }
}

TEST_CASE("family box densities plus good density approach 1") {
  const long p = 5;
  ExactQ sum = proportion_absolute(KodairaType::I0(), p);
  for (auto t : {KodairaType::II(), KodairaType::III(), KodairaType::IV(),
                 KodairaType::I0star(), KodairaType::IVstar(), KodairaType::IIIstar(),
                 KodairaType::IIstar()})
    sum += proportion_absolute(t, p);
  const unsigned N = 12;
  for (unsigned n = 1; n <= N; ++n)
    sum += proportion_absolute(KodairaType::I(n), p) +
           proportion_absolute(KodairaType::Istar(n), p);
  // exact geometric tails of the two families
  mpz_class pN = 1;
  for (unsigned i = 0; i < N; ++i) pN *= p;
  ExactQ tail_mult(mpz_class(p - 1), pN * p * p);
  tail_mult.canonicalize();
  mpz_class p7 = 1;
  for (unsigned i = 0; i < 7; ++i) p7 *= p;
  ExactQ tail_pm(mpz_class(p - 1), pN * p7);
  tail_pm.canonicalize();
  CHECK(sum + tail_mult + tail_pm == 1);
}

TEST_CASE("budget enforcement") {
  CHECK_THROWS_AS(box_census(KodairaType::Istar(2), 7, 1000), BoxTooLargeError);
}
