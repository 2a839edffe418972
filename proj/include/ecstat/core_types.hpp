#pragma once

#include <compare>
#include <limits>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace ecstat {

/// p-adic valuation; valuation(0) is the distinguished infinity.
struct Valuation {
  static constexpr unsigned kInf = std::numeric_limits<unsigned>::max();
  unsigned v = 0;

  static Valuation infinity() { return {kInf}; }
  static Valuation of(unsigned k) { return {k}; }
  bool is_infinite() const { return v == kInf; }

  // Infinity compares larger than every finite value.
  friend auto operator<=>(Valuation, Valuation) = default;
  friend bool operator==(Valuation a, unsigned b) { return a.v == b; }
  friend auto operator<=>(Valuation a, unsigned b) { return a.v <=> b; }
};

Valuation valuation(const mpz_class& n, const mpz_class& p);
Valuation valuation(const mpz_class& n, long p);

/// Reduced short-Weierstrass pair (A, B) with cached D = 4A^3 + 27B^2.
/// Invariants: D != 0 and no prime q has q^4 | A together with q^6 | B.
class WeierstrassPair {
 public:
  /// Validates both invariants. Throws SingularCurveError / NotReducedError.
  static WeierstrassPair make(mpz_class A, mpz_class B);

  /// Trusted constructor for values known to satisfy the invariants
  /// (still rejects D = 0).
  static WeierstrassPair unchecked(mpz_class A, mpz_class B);

  const mpz_class& A() const { return a_; }
  const mpz_class& B() const { return b_; }
  const mpz_class& D() const { return d_; }

  friend bool operator==(const WeierstrassPair&, const WeierstrassPair&) = default;

 private:
  WeierstrassPair(mpz_class A, mpz_class B, mpz_class D)
      : a_(std::move(A)), b_(std::move(B)), d_(std::move(D)) {}
  mpz_class a_, b_, d_;
};

/// H(E) = max(|A|^3, B^2).
mpz_class height(const WeierstrassPair& pair);

/// Box of pairs with height at most X: |A| <= a_bound, |B| <= b_bound.
struct CensusWindow {
  mpz_class X;
  mpz_class a_bound;  // floor(X^{1/3})
  mpz_class b_bound;  // floor(X^{1/2})

  static CensusWindow for_height(const mpz_class& X);
};

/// All integer pairs (-3u^2, 2u^3) inside the window, u = 0 included.
/// These are exactly the pairs with 4A^3 + 27B^2 = 0.
std::vector<std::pair<mpz_class, mpz_class>> singular_locus(const CensusWindow& window);

}  // namespace ecstat
