#include "ecstat/kodaira.hpp"

#include <charconv>

#include "ecstat/errors.hpp"

namespace ecstat {

unsigned KodairaType::discriminant_valuation() const {
  switch (tag) {
    case Tag::I0: return 0;
    case Tag::In: return n;
    case Tag::II: return 2;
    case Tag::III: return 3;
    case Tag::IV: return 4;
    case Tag::I0star: return 6;
    case Tag::Instar: return n + 6;
    case Tag::IVstar: return 8;
    case Tag::IIIstar: return 9;
    case Tag::IIstar: return 10;
  }
  return 0;
}

std::string KodairaType::name() const {
  switch (tag) {
    case Tag::I0: return "I0";
    case Tag::In: return "I" + std::to_string(n);
    case Tag::II: return "II";
    case Tag::III: return "III";
    case Tag::IV: return "IV";
    case Tag::I0star: return "I0*";
    case Tag::Instar: return "I" + std::to_string(n) + "*";
    case Tag::IVstar: return "IV*";
    case Tag::IIIstar: return "III*";
    case Tag::IIstar: return "II*";
  }
  return "?";
}

std::optional<KodairaType> KodairaType::parse(std::string_view s) {
  if (s == "I0") return I0();
  if (s == "II") return II();
  if (s == "III") return III();
  if (s == "IV") return IV();
  if (s == "I0*") return I0star();
  if (s == "IV*") return IVstar();
  if (s == "III*") return IIIstar();
  if (s == "II*") return IIstar();
  if (s.size() >= 2 && s[0] == 'I') {
    bool star = s.back() == '*';
    std::string_view digits = s.substr(1, s.size() - 1 - (star ? 1 : 0));
    unsigned n = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && n >= 1)
      return star ? Istar(n) : I(n);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && n == 0 && star)
      return I0star();
  }
  return std::nullopt;
}

namespace {

constexpr unsigned kInf = Valuation::kInf;

void require_prime_ge5(long p) {
  if (p < 5 || !is_prime(mpz_class(p)))
    throw BadPrimeError("prime >= 5 required, got " + std::to_string(p));
}

unsigned val_i64(std::int64_t n, long p) {
  if (n == 0) return kInf;
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

// Shared decision table over the valuation triple. The callback `vd`
// computes v(D) lazily; it is needed only on the a=0 and (a,b)=(2,3) rows.
template <typename FD>
KodairaType table(unsigned a, unsigned b, FD&& vd, bool& recurse) {
  recurse = false;
  if (a == 0) {
    unsigned d = vd();
    return d == 0 ? KodairaType::I0() : KodairaType::I(d);
  }
  if (b == 0) return KodairaType::I0();
  if (b == 1) return KodairaType::II();
  if (a == 1) return KodairaType::III();
  if (b == 2) return KodairaType::IV();
  // From here a >= 2 and b >= 3.
  if (a >= 4 && b >= 6) {
    recurse = true;  // non-minimal at p: divide (A, B) by (p^4, p^6)
    return KodairaType::I0();
  }
  if (a == 2 && b == 3) {
    unsigned d = vd();  // 3a = 2b = 6: cancellation decides I0* vs In*
    return d == 6 ? KodairaType::I0star() : KodairaType::Istar(d - 6);
  }
  if (a == 2 || b == 3) return KodairaType::I0star();  // v(D) = 6 forced
  if (b == 4) return KodairaType::IVstar();
  if (a == 3) return KodairaType::IIIstar();
  return KodairaType::IIstar();  // a >= 4, b == 5
}

}  // namespace

KodairaType classify_i64(std::int64_t A, std::int64_t B, long p) {
  unsigned a = val_i64(A, p);
  unsigned b = val_i64(B, p);
  bool recurse = false;
  KodairaType t = table(
      a, b,
      [&] { return val_i64(4 * A * A * A + 27 * B * B, p); }, recurse);
  if (recurse) {
    std::int64_t p4 = static_cast<std::int64_t>(p) * p * p * p;
    return classify_i64(A / p4, B / (p4 * p * p), p);
  }
  return t;
}

LocalReduction classify(const WeierstrassPair& pair, long p) {
  require_prime_ge5(p);
  mpz_class A = pair.A(), B = pair.B();
  mpz_class P(p);
  for (;;) {
    unsigned a = valuation(A, P).v;
    unsigned b = valuation(B, P).v;
    mpz_class D = 4 * A * A * A + 27 * B * B;
    bool recurse = false;
    KodairaType t = table(
        a, b, [&] { return valuation(D, P).v; }, recurse);
    if (recurse) {
      mpz_class p4 = P * P * P * P;
      A /= p4;
      B /= p4 * P * P;
      continue;
    }
    unsigned dval = valuation(D, P).v;
    return LocalReduction{p, t, t.conductor_exponent(), dval};
  }
}

WeierstrassPair twist_by_p(const WeierstrassPair& pair, long p) {
  require_prime_ge5(p);
  mpz_class P(p);
  mpz_class A = P * P * pair.A();
  mpz_class B = P * P * P * pair.B();
  mpz_class p4 = P * P * P * P, p6 = p4 * P * P;
  while ((A == 0 || valuation(A, P) >= 4u) && (B == 0 || valuation(B, P) >= 6u)) {
    A /= p4;
    B /= p6;
    if (A == 0 && B == 0) break;  // unreachable for nonsingular input
  }
  return WeierstrassPair::unchecked(std::move(A), std::move(B));
}

std::set<mpz_class> bad_primes_ge5(const WeierstrassPair& pair,
                                   const FactorBudget& budget) {
  std::set<mpz_class> out;
  for (const auto& [q, e] : factorize(pair.D(), budget))
    if (q >= 5) out.insert(q);
  return out;
}

mpz_class conductor_star(const WeierstrassPair& pair, const FactorBudget& budget) {
  mpz_class n = 1;
  for (const mpz_class& q : bad_primes_ge5(pair, budget)) {
    if (!q.fits_slong_p())
      throw CapacityError("bad prime exceeds classifier range: " + q.get_str());
    LocalReduction lr = classify(pair, q.get_si());
    for (int i = 0; i < lr.conductor_exponent; ++i) n *= q;
  }
  return n;
}

}  // namespace ecstat
