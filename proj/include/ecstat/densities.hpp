#pragma once

#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ecstat/kodaira.hpp"

namespace ecstat {

/// All density formulas are evaluated in exact rational arithmetic;
/// floats appear only at presentation time and in the zeta ratio.
using ExactQ = mpq_class;

enum class Mode { given_bad, absolute };

enum class ReductionClass { bad, good, multiplicative, potentially_multiplicative };

/// lim #E_p^T(X) / #E_p(X) for a bad type T.
ExactQ proportion_given_bad(const KodairaType& type, long p);

/// lim #E_p^T(X) / #E(X) for any type T (including I0).
ExactQ proportion_absolute(const KodairaType& type, long p);

/// Closed-form sums over the infinite families.
ExactQ aggregate(ReductionClass cls, long p, Mode mode);

/// lim #E_p^T(X) / X^{5/6} = coefficient / zeta(10).
struct ScaledLimit {
  ExactQ coefficient;
  bool inverse_zeta10 = true;
  double value() const;
};

ScaledLimit leading_constant(const KodairaType& type, long p);

/// The whole family: #E(X) / X^{5/6} -> 4 / zeta(10).
ScaledLimit leading_constant_family();

/// Product over distinct primes; given_bad mode requires bad types.
ExactQ multi_prime_proportion(const std::vector<std::pair<long, KodairaType>>& spec,
                              Mode mode);

/// zeta(10)/zeta(2) = 2 pi^8 / 31185; proportion of curves whose
/// prime-to-6 conductor part is squarefree.
struct ZetaRatio {
  std::string closed_form;
  double value;
};

ZetaRatio semistable_star_density();

double zeta2();   // pi^2 / 6
double zeta10();  // pi^10 / 93555

/// Independent route: Euler-Maclaurin series summation for zeta(s), s >= 2.
double zeta_series(int s);

}  // namespace ecstat
