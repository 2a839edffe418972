#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace ecstat {

/// Simple sieve of Eratosthenes.
std::vector<std::uint32_t> primes_up_to(std::uint32_t n);

bool is_prime(const mpz_class& n);
bool is_prime_u64(std::uint64_t n);

struct FactorBudget {
  std::uint64_t trial_bound = 10'000'000;  // trial-divide up to this
  unsigned rho_rounds = 80;                // Pollard-Brent restarts before giving up
};

/// Full factorization of |n| (n != 0), sorted by prime.
/// Throws FactorizationIncompleteError when a composite cofactor
/// survives both trial division and the rho budget.
std::vector<std::pair<mpz_class, unsigned>> factorize(const mpz_class& n,
                                                      const FactorBudget& budget = {});

}  // namespace ecstat
