#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "ecstat/core_types.hpp"
#include "ecstat/primes.hpp"

namespace ecstat {

/// Kodaira symbol. I0 is good reduction; In / Instar carry n >= 1.
struct KodairaType {
  enum class Tag : std::uint8_t {
    I0,
    In,
    II,
    III,
    IV,
    I0star,
    Instar,
    IVstar,
    IIIstar,
    IIstar,
  };

  Tag tag = Tag::I0;
  unsigned n = 0;  // used by In and Instar only

  static KodairaType I0() { return {Tag::I0, 0}; }
  static KodairaType I(unsigned n) { return {Tag::In, n}; }
  static KodairaType II() { return {Tag::II, 0}; }
  static KodairaType III() { return {Tag::III, 0}; }
  static KodairaType IV() { return {Tag::IV, 0}; }
  static KodairaType I0star() { return {Tag::I0star, 0}; }
  static KodairaType Istar(unsigned n) { return {Tag::Instar, n}; }
  static KodairaType IVstar() { return {Tag::IVstar, 0}; }
  static KodairaType IIIstar() { return {Tag::IIIstar, 0}; }
  static KodairaType IIstar() { return {Tag::IIstar, 0}; }

  bool is_bad() const { return tag != Tag::I0; }
  bool is_multiplicative() const { return tag == Tag::In; }
  bool is_additive() const { return is_bad() && tag != Tag::In; }

  /// 0 for I0, 1 for In, 2 otherwise (valid at p >= 5).
  int conductor_exponent() const {
    if (tag == Tag::I0) return 0;
    if (tag == Tag::In) return 1;
    return 2;
  }

  /// Valuation of the minimal discriminant for this type at p >= 5.
  unsigned discriminant_valuation() const;

  std::string name() const;  // "I0", "I3", "II", "I0*", "I2*", "IV*", ...
  static std::optional<KodairaType> parse(std::string_view s);

  friend bool operator==(const KodairaType&, const KodairaType&) = default;
  friend auto operator<=>(const KodairaType&, const KodairaType&) = default;
};

struct LocalReduction {
  long p = 0;
  KodairaType type;
  int conductor_exponent = 0;
  unsigned discriminant_valuation = 0;
};

/// Kodaira type at a prime p >= 5 from the valuation triple
/// (v(A), v(B), v(D)). Throws BadPrimeError for p < 5 or composite p.
LocalReduction classify(const WeierstrassPair& pair, long p);

/// int64 fast path; requires 4A^3 + 27B^2 != 0 and no intermediate overflow.
KodairaType classify_i64(std::int64_t A, std::int64_t B, long p);

/// Quadratic twist by p, minimized at p: (p^2 A, p^3 B) reduced.
WeierstrassPair twist_by_p(const WeierstrassPair& pair, long p);

/// Primes p >= 5 dividing D.
std::set<mpz_class> bad_primes_ge5(const WeierstrassPair& pair,
                                   const FactorBudget& budget = {});

/// N* = prime-to-6 part of the conductor.
mpz_class conductor_star(const WeierstrassPair& pair, const FactorBudget& budget = {});

}  // namespace ecstat
