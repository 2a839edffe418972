#include "ecstat/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ecstat/densities.hpp"
#include "ecstat/errors.hpp"
#include "ecstat/primes.hpp"

namespace ecstat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

mpz_class zpow(long p, unsigned e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), e);
  return r;
}

void require_p(long p) {
  if (p < 5 || !is_prime(mpz_class(p)))
    throw BadPrimeError("prime >= 5 required, got " + std::to_string(p));
}

}  // namespace

SieveParams SieveParams::compute(const mpz_class& X) {
  if (X < 4096) throw XTooSmallError("X must be at least 2^12 for a sieve cutoff");
  mpz_class x12;
  mpz_root(x12.get_mpz_t(), X.get_mpz_t(), 12);  // floor(X^{1/12}) >= 2
  SieveParams sp;
  sp.X = X;
  sp.Q = 1;
  std::uint32_t bound = static_cast<std::uint32_t>(
      std::min<unsigned long>(x12.get_ui(), 1u << 30));
  for (std::uint32_t q : primes_up_to(bound)) {
    if (sp.Q * q > x12) break;
    sp.Q *= q;
    ++sp.k;
    sp.q = q;
  }
  return sp;
}

TailBound tail_bound(const mpz_class& X, const mpz_class& d1, const mpz_class& d2,
                     const SieveParams& params) {
  if (d1 <= 0 || d2 <= 0) throw std::invalid_argument("d1, d2 must be positive");
  const double x = X.get_d();
  const double x13 = std::cbrt(x);
  const double x12sq = std::sqrt(x);
  const double x56 = std::pow(x, 5.0 / 6.0);
  const double q = static_cast<double>(params.q);
  TailBound tb;
  tb.lower = -x13 / (3.0 * d1.get_d() * q * q * q) -
             x12sq / (5.0 * d2.get_d() * std::pow(q, 5));
  tb.upper = x56 / (9.0 * d1.get_d() * d2.get_d() * std::pow(q, 9));
  return tb;
}

double prime_tail_sum(const mpz_class& X, const mpz_class& d1, const mpz_class& d2,
                      const SieveParams& params) {
  mpz_class a, b, x12;
  mpz_root(a.get_mpz_t(), X.get_mpz_t(), 3);
  mpz_sqrt(b.get_mpz_t(), X.get_mpz_t());
  mpz_root(x12.get_mpz_t(), X.get_mpz_t(), 12);
  double sum = 0;
  for (std::uint32_t q : primes_up_to(static_cast<std::uint32_t>(x12.get_ui()))) {
    if (q <= static_cast<std::uint32_t>(params.q)) continue;
    mpz_class t1 = a / (d1 * zpow(q, 4));
    mpz_class t2 = b / (d2 * zpow(q, 6));
    mpz_class prod = t1 * t2;
    sum += prod.get_d();
  }
  return sum;
}

namespace {

// Shared per-call context: the sieve product terms and the fractional
// powers of X used by every displayed bound.
struct Ctx {
  SieveParams sp;
  mpz_class P;      // prod (q_i^10 - 1)
  mpz_class Pstar;  // prod q_i^8 (q_i^2 - 1)
  mpz_class a_bound, b_bound;
  mpz_class Q4, Q6;
  double x13, x12, x16, x56;
  double q3, q5, q9;

  explicit Ctx(const mpz_class& X) : sp(SieveParams::compute(X)) {
    P = 1;
    Pstar = 1;
    for (std::uint32_t q :
         primes_up_to(static_cast<std::uint32_t>(sp.q))) {
      P *= zpow(q, 10) - 1;
      Pstar *= zpow(q, 8) * (mpz_class(q) * q - 1);
    }
    mpz_root(a_bound.get_mpz_t(), X.get_mpz_t(), 3);
    mpz_sqrt(b_bound.get_mpz_t(), X.get_mpz_t());
    Q4 = sp.Q * sp.Q * sp.Q * sp.Q;
    Q6 = Q4 * sp.Q * sp.Q;
    const double x = X.get_d();
    x13 = std::cbrt(x);
    x12 = std::sqrt(x);
    x16 = std::pow(x, 1.0 / 6.0);
    x56 = std::pow(x, 5.0 / 6.0);
    const double q = static_cast<double>(sp.q);
    q3 = q * q * q;
    q5 = q3 * q * q;
    q9 = q5 * q3 * q;
  }

  // 4 c floor(X^{1/3}/d1) floor(X^{1/2}/d2); d1, d2 carry the Q factors.
  double main(const mpz_class& c, const mpz_class& d1, const mpz_class& d2) const {
    mpz_class t = 4 * c * (a_bound / d1) * (b_bound / d2);
    return t.get_d();
  }
  // 4 c (X^{1/3}/(3 d1 q^3) + X^{1/2}/(5 d2 q^5))
  double up_tail(const mpz_class& c, const mpz_class& d1, const mpz_class& d2) const {
    return 4.0 * c.get_d() *
           (x13 / (3.0 * d1.get_d() * q3) + x12 / (5.0 * d2.get_d() * q5));
  }
  // 4 c X^{5/6}/(9 d1 d2 q^9)
  double low_tail(const mpz_class& c, const mpz_class& d1, const mpz_class& d2) const {
    return 4.0 * c.get_d() * x56 / (9.0 * d1.get_d() * d2.get_d() * q9);
  }
  double singular_correction() const { return 1.0 + 2.0 * x16 / std::cbrt(2.0); }
};

struct TypeShape {
  mpz_class coeff;     // residue classes in the (e1, e2) box
  unsigned e1, e2;     // moduli p^{e1}, p^{e2}
};

TypeShape type_shape(const std::string& id, long p, unsigned n) {
  mpz_class pm1 = p - 1;
  if (id == "multiplicative") return {zpow(p, n) * pm1 * pm1, n + 1, n + 1};
  if (id == "II") return {pm1, 1, 2};
  if (id == "III") return {pm1, 2, 2};
  if (id == "IV") return {pm1, 2, 3};
  if (id == "I0star") return {zpow(p, 2) - p, 3, 4};
  if (id == "Instar") return {zpow(p, n) * pm1 * pm1, n + 3, n + 4};
  if (id == "IVstar") return {pm1, 3, 5};
  if (id == "IIIstar") return {pm1, 4, 5};
  if (id == "IIstar") return {pm1, 4, 6};
  throw UnknownLemmaError("unknown lemma id: " + id);
}

bool known_lemma(const std::string& id) {
  for (const char* k : kLemmaIds)
    if (id == k) return true;
  return false;
}

}  // namespace

BoundEnvelope bound_envelope(const std::string& lemma_id, const mpz_class& X,
                             std::optional<long> p, std::optional<unsigned> n,
                             bool literal) {
  if (!known_lemma(lemma_id)) throw UnknownLemmaError("unknown lemma id: " + lemma_id);
  const bool needs_p = lemma_id != "prop1" && lemma_id != "semistable";
  const bool needs_n = lemma_id == "multiplicative" || lemma_id == "Instar";
  if (needs_p && !p) throw MissingParameterError(lemma_id + " requires a prime p");
  if (needs_n && (!n || *n < 1))
    throw MissingParameterError(lemma_id + " requires n >= 1");
  if (p) require_p(*p);

  Ctx c(X);
  BoundEnvelope env;
  env.lemma_id = lemma_id;
  env.X = X;
  env.p = p;
  env.n = n;

  if (lemma_id == "prop1") {
    const double m = c.main(c.P, c.Q4, c.Q6);
    env.upper = m + c.up_tail(c.P, c.Q4, c.Q6);
    env.lower = m - c.low_tail(c.P, c.Q4, c.Q6) - c.singular_correction();
    return env;
  }
  if (lemma_id == "semistable") {
    const double m = c.main(c.Pstar, c.Q4, c.Q6);
    // displayed tail keeps a bare q_k instead of q_k^9
    env.lower = m -
                4.0 * c.Pstar.get_d() * c.x56 /
                    (9.0 * static_cast<double>(c.sp.q) * c.Q4.get_d() * c.Q6.get_d()) -
                c.singular_correction();
    env.upper = kInf;
    return env;
  }
  const long pp = *p;
  if (lemma_id == "badreduction") {
    const mpz_class p8m1 = zpow(pp, 8) - 1;
    const mpz_class pm1 = pp - 1;
    const mpz_class q10z = c.Q4 * c.Q6;
    const double q10 = q10z.get_d();
    env.upper = 4.0 * pm1.get_d() * c.P.get_d() * c.x56 / (pp * pp * q10) +
                4.0 * p8m1.get_d() * c.P.get_d() * c.x56 / (zpow(pp, 10).get_d() * q10) +
                c.up_tail(pm1 * c.P, pp * c.Q4, pp * c.Q6) +
                c.up_tail(p8m1 * c.P, zpow(pp, 4) * c.Q4, zpow(pp, 6) * c.Q6);
    env.lower = -kInf;
    return env;
  }
  if (lemma_id == "goodreduction") {
    const mpz_class p2mp = zpow(pp, 2) - pp;
    // the displayed bound subtracts both tails from the main terms
    env.upper = c.main(p2mp * c.P, pp * c.Q4, pp * c.Q6) +
                c.main(c.P, zpow(pp, 4) * c.Q4, zpow(pp, 6) * c.Q6) -
                c.low_tail(p2mp * c.P, pp * c.Q4, pp * c.Q6) -
                c.low_tail(c.P, zpow(pp, 4) * c.Q4, zpow(pp, 6) * c.Q6);
    env.lower = -kInf;
    return env;
  }

  // single-type lemmas: main is 4 c floor(X^{1/3}/p^{e1}Q^4) floor(X^{1/2}/p^{e2}Q^6)
  const TypeShape ts = type_shape(lemma_id, pp, n.value_or(0));
  const mpz_class d1 = zpow(pp, ts.e1) * c.Q4;
  const mpz_class d2 = zpow(pp, ts.e2) * c.Q6;
  const double m = c.main(ts.coeff * c.P, d1, d2);
  env.lower = m - c.low_tail(ts.coeff * c.P, d1, d2);
  mpz_class up_coeff = ts.coeff;
  if (literal) {
    // printed forms swap the I0star / Instar upper-tail coefficients
    const mpz_class pm1 = pp - 1;
    if (lemma_id == "I0star") up_coeff = zpow(pp, n.value_or(0)) * pm1 * pm1;
    if (lemma_id == "Instar") up_coeff = zpow(pp, 2) - pp;
  }
  env.upper = m + c.up_tail(up_coeff * c.P, d1, d2);
  return env;
}

double lemma_leading_constant(const std::string& lemma_id, std::optional<long> p,
                              std::optional<unsigned> n) {
  if (lemma_id == "prop1") return leading_constant_family().value();
  if (lemma_id == "semistable") return 4.0 / zeta2();
  if (!p) throw MissingParameterError(lemma_id + " requires a prime p");
  const long pp = *p;
  if (lemma_id == "badreduction")
    return 4.0 * aggregate(ReductionClass::bad, pp, Mode::absolute).get_d() / zeta10();
  if (lemma_id == "goodreduction")
    return 4.0 * aggregate(ReductionClass::good, pp, Mode::absolute).get_d() / zeta10();
  KodairaType t;
  if (lemma_id == "multiplicative") t = KodairaType::I(n.value_or(1));
  else if (lemma_id == "II") t = KodairaType::II();
  else if (lemma_id == "III") t = KodairaType::III();
  else if (lemma_id == "IV") t = KodairaType::IV();
  else if (lemma_id == "I0star") t = KodairaType::I0star();
  else if (lemma_id == "Instar") t = KodairaType::Istar(n.value_or(1));
  else if (lemma_id == "IVstar") t = KodairaType::IVstar();
  else if (lemma_id == "IIIstar") t = KodairaType::IIIstar();
  else if (lemma_id == "IIstar") t = KodairaType::IIstar();
  else throw UnknownLemmaError("unknown lemma id: " + lemma_id);
  return leading_constant(t, pp).value();
}

std::uint64_t lemma_census_count(const std::string& lemma_id, const CensusTally& tally,
                                 std::optional<long> p, std::optional<unsigned> n) {
  if (lemma_id == "prop1") return tally.total_curves;
  if (lemma_id == "semistable") return tally.coprime_pairs;
  if (!p) throw MissingParameterError(lemma_id + " requires a prime p");
  auto it = tally.per_prime.find(*p);
  if (it == tally.per_prime.end())
    throw std::invalid_argument("census did not track prime " + std::to_string(*p));
  const PrimeTally& pt = it->second;
  if (lemma_id == "badreduction") return pt.bad();
  if (lemma_id == "goodreduction") return pt.good;
  if (lemma_id == "multiplicative") return pt.type_count(KodairaType::I(n.value_or(1)));
  if (lemma_id == "II") return pt.type_count(KodairaType::II());
  if (lemma_id == "III") return pt.type_count(KodairaType::III());
  if (lemma_id == "IV") return pt.type_count(KodairaType::IV());
  if (lemma_id == "I0star") return pt.type_count(KodairaType::I0star());
  if (lemma_id == "Instar") return pt.type_count(KodairaType::Istar(n.value_or(1)));
  if (lemma_id == "IVstar") return pt.type_count(KodairaType::IVstar());
  if (lemma_id == "IIIstar") return pt.type_count(KodairaType::IIIstar());
  if (lemma_id == "IIstar") return pt.type_count(KodairaType::IIstar());
  throw UnknownLemmaError("unknown lemma id: " + lemma_id);
}

EnvelopeReport envelope_vs_census(const std::string& lemma_id, const mpz_class& X,
                                  std::optional<long> p, std::optional<unsigned> n,
                                  const CensusTally& tally, double slack,
                                  bool literal) {
  if (tally.X != X) throw std::invalid_argument("census tally is for a different X");
  EnvelopeReport r;
  r.envelope = bound_envelope(lemma_id, X, p, n, literal);
  r.census_count = lemma_census_count(lemma_id, tally, p, n);
  r.slack = slack;
  const double x56 = std::pow(X.get_d(), 5.0 / 6.0);
  r.normalized_lower = r.envelope.lower / x56;
  r.normalized_upper = r.envelope.upper / x56;
  r.leading = lemma_leading_constant(lemma_id, p, n);
  const double cnt = static_cast<double>(r.census_count);
  const double lo = std::isinf(r.envelope.lower)
                        ? -kInf
                        : r.envelope.lower - slack * std::abs(r.envelope.lower);
  const double hi = std::isinf(r.envelope.upper)
                        ? kInf
                        : r.envelope.upper + slack * std::abs(r.envelope.upper);
  r.contains = cnt >= lo && cnt <= hi;
  return r;
}

}  // namespace ecstat
