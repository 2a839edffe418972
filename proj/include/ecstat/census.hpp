#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ecstat/kodaira.hpp"

namespace ecstat {

struct PrimeTally {
  std::uint64_t good = 0;
  std::map<KodairaType, std::uint64_t> by_type;

  std::uint64_t bad() const;
  std::uint64_t multiplicative() const;
  std::uint64_t type_count(const KodairaType& t) const;

  PrimeTally& operator+=(const PrimeTally& o);
  friend bool operator==(const PrimeTally&, const PrimeTally&) = default;
};

/// Commutative-monoid tally over a processed strip of A-columns.
struct CensusTally {
  mpz_class X;
  long long a_begin = 0;  // first A column covered (inclusive)
  long long a_end = -1;   // last A column covered (inclusive)
  std::uint64_t total_curves = 0;
  std::uint64_t singular_skipped = 0;
  std::uint64_t nonreduced_skipped = 0;
  std::uint64_t coprime_pairs = 0;         // gcd(A,B) = 1
  std::uint64_t star_semistable_pairs = 0; // gcd(A,B) has no prime factor >= 5
  std::vector<long> primes;
  std::map<long, PrimeTally> per_prime;

  bool complete() const;

  /// Adjacent-strip merge: next must start at a_end + 1.
  void merge(const CensusTally& next);

  friend bool operator==(const CensusTally&, const CensusTally&) = default;
};

/// Scan every pair in the window; skip singular and non-reduced pairs;
/// classify at each requested prime. Deterministic for any worker count.
CensusTally run_census(const mpz_class& X, const std::vector<long>& primes,
                       unsigned workers = 1);

/// Partial scan over A in [a_from, a_to] (inclusive); building block for
/// checkpointed runs.
CensusTally run_census_range(const mpz_class& X, const std::vector<long>& primes,
                             long long a_from, long long a_to, unsigned workers = 1);

/// Resume: continue a partial tally to completion.
CensusTally resume_census(const CensusTally& partial, unsigned workers = 1);

struct QuantityId {
  enum class Kind {
    total,              // #E(X)
    height_normalized,  // #E(X)/X^{5/6}
    bad_share,          // #E_p(X)/#E(X)
    good_share,         // #E_p^{I0}(X)/#E(X)
    mult_given_bad,     // #E_p^m(X)/#E_p(X)
    type_given_bad,     // #E_p^T(X)/#E_p(X)
    type_absolute,      // #E_p^T(X)/#E(X)
    coprime_share,      // gcd(A,B)=1 share
    star_share,         // prime-to-6 gcd share
  };
  Kind kind = Kind::total;
  KodairaType type;  // for the type_* kinds

  std::string name() const;
  static QuantityId parse(const std::string& s);  // throws std::invalid_argument
};

double empirical_density(const CensusTally& tally, const QuantityId& q, long p = 0);

/// Theoretical limit of the quantity (NaN has no occurrences: every
/// supported quantity has a closed form).
double theoretical_density(const QuantityId& q, long p = 0);

struct ConvergenceRow {
  mpz_class X;
  std::string quantity;
  double empirical = 0;
  double theoretical = 0;
  double abs_err = 0;
  double rel_err = 0;
};

std::vector<ConvergenceRow> convergence_report(const std::vector<mpz_class>& ladder,
                                               long p,
                                               const std::vector<QuantityId>& quantities,
                                               unsigned workers = 1);

/// Checkpoint file: length-delimited text, "ecstat-checkpoint v1" header,
/// FNV-1a 64 checksum trailer. Stable across versions of this tool.
void checkpoint_save(const CensusTally& tally, const std::string& path);
CensusTally checkpoint_load(const std::string& path);

/// Canonical CSV emission for a finished census (fixed header, exact
/// rationals as "num/den"); used by the CLI and the determinism tests.
void write_census_csv(const CensusTally& tally, std::ostream& out);

}  // namespace ecstat
