#include "ecstat/core_types.hpp"

#include "ecstat/errors.hpp"
#include "ecstat/primes.hpp"

namespace ecstat {

Valuation valuation(const mpz_class& n, const mpz_class& p) {
  if (n == 0) return Valuation::infinity();
  mpz_class rest;
  unsigned long k = mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
  return Valuation::of(static_cast<unsigned>(k));
}

Valuation valuation(const mpz_class& n, long p) { return valuation(n, mpz_class(p)); }

namespace {

mpz_class disc_quantity(const mpz_class& A, const mpz_class& B) {
  return 4 * A * A * A + 27 * B * B;
}

// A prime q with q^4 | A and q^6 | B necessarily divides gcd(A, B)
// to multiplicity >= 4, so q <= gcd(A,B)^{1/4}.
void check_reduced(const mpz_class& A, const mpz_class& B) {
  mpz_class g = gcd(A, B);  // gcd(0, B) = |B|
  if (g <= 1) return;
  mpz_class root;
  mpz_root(root.get_mpz_t(), g.get_mpz_t(), 4);
  if (root < 2) return;
  if (root > 10'000'000)
    throw FactorizationIncompleteError(
        "reduced-pair check: gcd(A,B) too large for trial division");
  for (std::uint32_t q : primes_up_to(static_cast<std::uint32_t>(root.get_ui()))) {
    if (valuation(g, static_cast<long>(q)).v >= 4) {
      if (valuation(A, static_cast<long>(q)) >= 4u &&
          valuation(B, static_cast<long>(q)) >= 6u)
        throw NotReducedError("q^4 | A and q^6 | B for q = " + std::to_string(q));
    }
  }
}

}  // namespace

WeierstrassPair WeierstrassPair::make(mpz_class A, mpz_class B) {
  mpz_class D = disc_quantity(A, B);
  if (D == 0)
    throw SingularCurveError("4A^3 + 27B^2 = 0 for (A,B) = (" + A.get_str() + ", " +
                             B.get_str() + ")");
  check_reduced(A, B);
  return WeierstrassPair(std::move(A), std::move(B), std::move(D));
}

WeierstrassPair WeierstrassPair::unchecked(mpz_class A, mpz_class B) {
  mpz_class D = disc_quantity(A, B);
  if (D == 0) throw SingularCurveError("4A^3 + 27B^2 = 0");
  return WeierstrassPair(std::move(A), std::move(B), std::move(D));
}

mpz_class height(const WeierstrassPair& pair) {
  mpz_class a3 = abs(pair.A());
  a3 = a3 * a3 * a3;
  mpz_class b2 = pair.B() * pair.B();
  return a3 >= b2 ? a3 : b2;
}

CensusWindow CensusWindow::for_height(const mpz_class& X) {
  if (X < 1) throw std::invalid_argument("height bound must be >= 1");
  CensusWindow w;
  w.X = X;
  mpz_root(w.a_bound.get_mpz_t(), X.get_mpz_t(), 3);
  mpz_sqrt(w.b_bound.get_mpz_t(), X.get_mpz_t());
  return w;
}

std::vector<std::pair<mpz_class, mpz_class>> singular_locus(const CensusWindow& window) {
  std::vector<std::pair<mpz_class, mpz_class>> out;
  out.emplace_back(0, 0);
  for (mpz_class u = 1;; ++u) {
    mpz_class A = -3 * u * u;
    mpz_class B = 2 * u * u * u;
    if (abs(A) > window.a_bound || B > window.b_bound) break;
    out.emplace_back(A, B);
    out.emplace_back(A, -B);
  }
  return out;
}

}  // namespace ecstat
