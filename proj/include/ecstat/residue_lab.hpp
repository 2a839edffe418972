#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "ecstat/kodaira.hpp"

namespace ecstat {

enum class CuspConstraint { all, nonsingular_only };

/// Count pairs (A, B) mod p^n with 4A^3 + 27B^2 = 0 mod p^n;
/// nonsingular_only restricts to p not dividing A.
std::uint64_t cusp_curve_count(long p, unsigned n, CuspConstraint constraint,
                               std::uint64_t pair_budget = 1'000'000'000);

/// Number of residue classes producing type T in the minimal box
/// (modulus_a, modulus_b) that determines the type.
struct ClassCount {
  mpz_class count;
  mpz_class modulus_a;
  mpz_class modulus_b;
};

ClassCount class_count_closed_form(const KodairaType& type, long p);

struct ClassCountReport {
  long p = 0;
  std::uint64_t modulus_a = 0;
  std::uint64_t modulus_b = 0;
  std::string descriptor;
  std::uint64_t closed_form = 0;
  std::uint64_t brute_force = 0;
  bool match = false;
};

/// Classify every integer representative in [0, modulus_a) x [0, modulus_b)
/// (skipping the singular ones) and compare the type-T count with the
/// closed form.
ClassCountReport box_census(const KodairaType& type, long p,
                            std::uint64_t pair_budget = 1'000'000'000);

}  // namespace ecstat
