#pragma once

#include <optional>
#include <string>

#include <gmpxx.h>

#include "ecstat/census.hpp"

namespace ecstat {

/// Sieve cutoff data: k is the largest integer with Q_k = q_1...q_k <= X^{1/12};
/// q_k is the k-th prime.
struct SieveParams {
  mpz_class X;
  unsigned k = 0;
  mpz_class Q;
  long q = 0;

  /// Throws XTooSmallError when X < 2^12 (no admissible k).
  static SieveParams compute(const mpz_class& X);
};

inline SieveParams sieve_params(const mpz_class& X) { return SieveParams::compute(X); }

struct TailBound {
  double lower = 0;
  double upper = 0;
};

/// Brackets sum over primes q_k < q <= X^{1/12} of
/// floor(X^{1/3}/(d1 q^4)) * floor(X^{1/2}/(d2 q^6)):
/// lower = -X^{1/3}/(3 d1 q_k^3) - X^{1/2}/(5 d2 q_k^5),
/// upper = X^{5/6}/(9 d1 d2 q_k^9).
TailBound tail_bound(const mpz_class& X, const mpz_class& d1, const mpz_class& d2,
                     const SieveParams& params);

/// The bracketed sum itself, by brute force over the prime range.
double prime_tail_sum(const mpz_class& X, const mpz_class& d1, const mpz_class& d2,
                      const SieveParams& params);

/// Finite-X envelope of one lemma's displayed bound expressions.
/// One-sided lemmas carry -infinity / +infinity on the missing side.
struct BoundEnvelope {
  std::string lemma_id;
  mpz_class X;
  std::optional<long> p;
  std::optional<unsigned> n;
  double lower = 0;
  double upper = 0;
};

inline const char* const kLemmaIds[] = {
    "prop1",  "badreduction", "goodreduction", "multiplicative", "II",
    "III",    "IV",           "I0star",        "Instar",         "IVstar",
    "IIIstar", "IIstar",      "semistable"};

/// Evaluate the displayed bounds verbatim (floors included, tail terms
/// substituted per the auxiliary bracket). `literal` keeps the printed
/// upper-tail coefficients of the I0star / Instar lemmas instead of the
/// pattern-consistent ones.
BoundEnvelope bound_envelope(const std::string& lemma_id, const mpz_class& X,
                             std::optional<long> p = std::nullopt,
                             std::optional<unsigned> n = std::nullopt,
                             bool literal = false);

/// Limit of envelope / X^{5/6} for the lemma's counted set.
double lemma_leading_constant(const std::string& lemma_id, std::optional<long> p,
                              std::optional<unsigned> n);

/// The census statistic the lemma's envelope brackets.
std::uint64_t lemma_census_count(const std::string& lemma_id, const CensusTally& tally,
                                 std::optional<long> p, std::optional<unsigned> n);

struct EnvelopeReport {
  BoundEnvelope envelope;
  std::uint64_t census_count = 0;
  bool contains = false;     // within [lower(1-slack), upper(1+slack)]
  double normalized_lower = 0;  // lower / X^{5/6}
  double normalized_upper = 0;
  double leading = 0;        // limiting constant
  double slack = 0;
};

EnvelopeReport envelope_vs_census(const std::string& lemma_id, const mpz_class& X,
                                  std::optional<long> p, std::optional<unsigned> n,
                                  const CensusTally& tally, double slack,
                                  bool literal = false);

}  // namespace ecstat
