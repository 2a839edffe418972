#include "ecstat/residue_lab.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "ecstat/errors.hpp"

namespace ecstat {

namespace {

void require_p(long p) {
  if (p < 5 || !is_prime(mpz_class(p)))
    throw BadPrimeError("prime >= 5 required, got " + std::to_string(p));
}

std::uint64_t upow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

std::uint64_t cusp_curve_count(long p, unsigned n, CuspConstraint constraint,
                               std::uint64_t pair_budget) {
  require_p(p);
  if (n < 1) throw std::invalid_argument("n >= 1 required");
  const double pairs = std::pow(static_cast<double>(p), 2.0 * n);
  if (pairs > static_cast<double>(pair_budget))
    throw BoxTooLargeError("p^{2n} exceeds pair budget");
  const std::uint64_t m = upow(static_cast<std::uint64_t>(p), n);

  // residue histogram of 27 B^2 mod m, then match -4 A^3 mod m
  std::vector<std::uint32_t> hist(m, 0);
  for (std::uint64_t b = 0; b < m; ++b) hist[27 * b % m * b % m] += 1;
  std::uint64_t count = 0;
  for (std::uint64_t a = 0; a < m; ++a) {
    if (constraint == CuspConstraint::nonsingular_only && a % p == 0) continue;
    std::uint64_t a3 = 4 * a % m * a % m * a % m;
    count += hist[(m - a3) % m];
  }
  return count;
}

ClassCount class_count_closed_form(const KodairaType& type, long p) {
  require_p(p);
  using Tag = KodairaType::Tag;
  auto P = [&](unsigned e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), e);
    return r;
  };
  mpz_class pm1 = p - 1;
  unsigned n = type.n;
  switch (type.tag) {
    case Tag::I0: throw BadTypeError("no class count for I0");
    case Tag::In: return {P(n) * pm1 * pm1, P(n + 1), P(n + 1)};
    case Tag::II: return {pm1, P(1), P(2)};
    case Tag::III: return {pm1, P(2), P(2)};
    case Tag::IV: return {pm1, P(2), P(3)};
    case Tag::I0star: return {P(2) - p, P(3), P(4)};
    case Tag::Instar: return {P(n) * pm1 * pm1, P(n + 3), P(n + 4)};
    case Tag::IVstar: return {pm1, P(3), P(5)};
    case Tag::IIIstar: return {pm1, P(4), P(5)};
    case Tag::IIstar: return {pm1, P(4), P(6)};
  }
  throw BadTypeError("unknown type");
}

ClassCountReport box_census(const KodairaType& type, long p,
                            std::uint64_t pair_budget) {
  ClassCount cc = class_count_closed_form(type, p);
  if (!cc.modulus_a.fits_ulong_p() || !cc.modulus_b.fits_ulong_p())
    throw BoxTooLargeError("box modulus exceeds 64-bit range");
  const std::uint64_t ma = cc.modulus_a.get_ui();
  const std::uint64_t mb = cc.modulus_b.get_ui();
  if (static_cast<double>(ma) * static_cast<double>(mb) >
      static_cast<double>(pair_budget))
    throw BoxTooLargeError("box of " + std::to_string(ma) + "x" + std::to_string(mb) +
                           " pairs exceeds budget");
  // overflow guard for 4A^3 + 27B^2 in int64
  const long double dmax = 4.0L * std::pow((long double)(ma - 1), 3.0L) +
                           27.0L * std::pow((long double)(mb - 1), 2.0L);
  if (dmax >= 9.2e18L) throw CapacityError("box values exceed int64 fast path");

  // Precompute 27 B^2 and its residue mod p.
  std::vector<std::int64_t> b27(mb);
  std::vector<std::uint8_t> b27mod(mb);
  for (std::uint64_t b = 0; b < mb; ++b) {
    std::int64_t v = 27 * static_cast<std::int64_t>(b) * static_cast<std::int64_t>(b);
    b27[b] = v;
    b27mod[b] = static_cast<std::uint8_t>(v % p);
  }

  std::uint64_t brute = 0;
  for (std::uint64_t a = 0; a < ma; ++a) {
    const std::int64_t a4 =
        4 * static_cast<std::int64_t>(a) * static_cast<std::int64_t>(a) *
        static_cast<std::int64_t>(a);
    const std::int64_t amod = a4 % p;
    for (std::uint64_t b = 0; b < mb; ++b) {
      const std::int64_t s = amod + b27mod[b];
      if (s != 0 && s != p) continue;  // D not divisible by p
      if (a == 0 && b == 0) continue;  // the only singular representative
      if (classify_i64(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b), p) ==
          type)
        ++brute;
    }
  }

  ClassCountReport report;
  report.p = p;
  report.modulus_a = ma;
  report.modulus_b = mb;
  report.descriptor = type.name();
  report.closed_form = cc.count.get_ui();
  report.brute_force = brute;
  report.match = report.closed_form == report.brute_force;
  return report;
}

}  // namespace ecstat
