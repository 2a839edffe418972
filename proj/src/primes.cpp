#include "ecstat/primes.hpp"

#include <algorithm>
#include <map>

#include "ecstat/errors.hpp"

namespace ecstat {

std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (std::uint32_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= n; j += i)
      composite[j] = true;
  }
  return out;
}

bool is_prime(const mpz_class& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

bool is_prime_u64(std::uint64_t n) {
  mpz_class m;
  mpz_import(m.get_mpz_t(), 1, 1, sizeof(n), 0, 0, &n);
  return is_prime(m);
}

namespace {

// Pollard rho, Brent variant. Returns a nontrivial factor or 0.
mpz_class rho_brent(const mpz_class& n, gmp_randstate_t rng) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  mpz_class y, c, m = 128, g = 1, r = 1, q = 1, x, ys;
  mpz_urandomm(y.get_mpz_t(), rng, n.get_mpz_t());
  mpz_urandomm(c.get_mpz_t(), rng, n.get_mpz_t());
  if (c == 0) c = 1;
  while (g == 1) {
    x = y;
    for (mpz_class i = 0; i < r; ++i) y = (y * y + c) % n;
    mpz_class k = 0;
    while (k < r && g == 1) {
      ys = y;
      mpz_class lim = std::min(m, mpz_class(r - k));
      for (mpz_class i = 0; i < lim; ++i) {
        y = (y * y + c) % n;
        q = q * abs(x - y) % n;
      }
      g = gcd(q, n);
      k += m;
    }
    r *= 2;
    if (r > 1 << 22) return 0;  // cycle budget exhausted
  }
  if (g == n) {
    // backtrack
    do {
      ys = (ys * ys + c) % n;
      g = gcd(abs(x - ys), n);
    } while (g == 1);
  }
  if (g == n) return 0;
  return g;
}

void factor_rec(mpz_class n, std::map<mpz_class, unsigned>& acc, gmp_randstate_t rng,
                unsigned rho_rounds) {
  if (n == 1) return;
  if (is_prime(n)) {
    acc[n] += 1;
    return;
  }
  // perfect power shortcut
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    for (unsigned e = 2; e <= mpz_sizeinbase(n.get_mpz_t(), 2); ++e) {
      mpz_class r;
      if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), e)) {
        std::map<mpz_class, unsigned> sub;
        factor_rec(r, sub, rng, rho_rounds);
        for (auto& [p, k] : sub) acc[p] += k * e;
        return;
      }
    }
  }
  mpz_class f = 0;
  for (unsigned round = 0; round < rho_rounds && f == 0; ++round) f = rho_brent(n, rng);
  if (f == 0 || f == n)
    throw FactorizationIncompleteError("composite cofactor could not be split: " +
                                       n.get_str());
  factor_rec(f, acc, rng, rho_rounds);
  factor_rec(n / f, acc, rng, rho_rounds);
}

}  // namespace

std::vector<std::pair<mpz_class, unsigned>> factorize(const mpz_class& n,
                                                      const FactorBudget& budget) {
  mpz_class m = abs(n);
  if (m == 0) throw std::invalid_argument("factorize(0)");
  std::map<mpz_class, unsigned> acc;
  for (std::uint64_t d = 2; d <= budget.trial_bound && m > 1; d += (d == 2 ? 1 : 2)) {
    if (d * d > m) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
        ++e;
      }
      acc[mpz_class(static_cast<unsigned long>(d))] = e;
    }
  }
  if (m > 1) {
    gmp_randstate_t rng;
    gmp_randinit_mt(rng);
    gmp_randseed_ui(rng, 0x5eedu);
    try {
      factor_rec(m, acc, rng, budget.rho_rounds);
    } catch (...) {
      gmp_randclear(rng);
      throw;
    }
    gmp_randclear(rng);
  }
  return {acc.begin(), acc.end()};
}

}  // namespace ecstat
