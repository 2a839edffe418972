#include "ecstat/densities.hpp"

#include <cmath>
#include <set>

#include "ecstat/errors.hpp"

namespace ecstat {

namespace {

constexpr long double kPi = 3.14159265358979323846264338327950288L;

mpz_class zpow(long p, unsigned e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), e);
  return r;
}

ExactQ make_q(mpz_class num, mpz_class den) {
  ExactQ q(std::move(num), std::move(den));
  q.canonicalize();
  return q;
}

void require_p(long p) {
  if (p < 5 || !is_prime(mpz_class(p)))
    throw BadPrimeError("prime >= 5 required, got " + std::to_string(p));
}

}  // namespace

ExactQ proportion_given_bad(const KodairaType& type, long p) {
  require_p(p);
  using Tag = KodairaType::Tag;
  mpz_class den9 = zpow(p, 9) - 1;
  mpz_class pm1 = p - 1;
  switch (type.tag) {
    case Tag::I0:
      throw BadTypeError("I0 has no given-bad proportion; use proportion_absolute");
    case Tag::In:
      return make_q(zpow(p, 8) * pm1 * pm1, zpow(p, type.n) * den9);
    case Tag::II: return make_q(zpow(p, 7) * pm1, den9);
    case Tag::III: return make_q(zpow(p, 6) * pm1, den9);
    case Tag::IV: return make_q(zpow(p, 5) * pm1, den9);
    case Tag::I0star: return make_q(zpow(p, 4) * pm1, den9);
    case Tag::Instar:
      return make_q(zpow(p, 3) * pm1 * pm1, zpow(p, type.n) * den9);
    case Tag::IVstar: return make_q(zpow(p, 2) * pm1, den9);
    case Tag::IIIstar: return make_q(p * pm1, den9);
    case Tag::IIstar: return make_q(pm1, den9);
  }
  throw BadTypeError("unknown type");
}

ExactQ proportion_absolute(const KodairaType& type, long p) {
  require_p(p);
  using Tag = KodairaType::Tag;
  mpz_class pm1 = p - 1;
  switch (type.tag) {
    case Tag::I0: return make_q(zpow(p, 10) - zpow(p, 9) + 1, zpow(p, 10));
    case Tag::In: return make_q(pm1 * pm1, zpow(p, type.n + 2));
    case Tag::II: return make_q(pm1, zpow(p, 3));
    case Tag::III: return make_q(pm1, zpow(p, 4));
    case Tag::IV: return make_q(pm1, zpow(p, 5));
    case Tag::I0star: return make_q(pm1, zpow(p, 6));
    case Tag::Instar: return make_q(pm1 * pm1, zpow(p, type.n + 7));
    case Tag::IVstar: return make_q(pm1, zpow(p, 8));
    case Tag::IIIstar: return make_q(pm1, zpow(p, 9));
    case Tag::IIstar: return make_q(pm1, zpow(p, 10));
  }
  throw BadTypeError("unknown type");
}

ExactQ aggregate(ReductionClass cls, long p, Mode mode) {
  require_p(p);
  mpz_class pm1 = p - 1;
  switch (cls) {
    case ReductionClass::multiplicative:
      if (mode == Mode::given_bad) return make_q(zpow(p, 8) * pm1, zpow(p, 9) - 1);
      return make_q(pm1, zpow(p, 2));  // 1/p - 1/p^2
    case ReductionClass::potentially_multiplicative:
      if (mode == Mode::given_bad) return make_q(zpow(p, 3) * pm1, zpow(p, 9) - 1);
      return make_q(pm1, zpow(p, 7));
    case ReductionClass::bad:
      if (mode == Mode::absolute)
        return make_q(zpow(p, 9) - 1, zpow(p, 10));  // 1/p - 1/p^10
      break;
    case ReductionClass::good:
      if (mode == Mode::absolute) return make_q(zpow(p, 10) - zpow(p, 9) + 1, zpow(p, 10));
      break;
  }
  throw BadCombinationError("unsupported (class, mode) combination");
}

double ScaledLimit::value() const {
  double c = coefficient.get_d();
  return inverse_zeta10 ? c / zeta10() : c;
}

ScaledLimit leading_constant(const KodairaType& type, long p) {
  return ScaledLimit{4 * proportion_absolute(type, p), true};
}

ScaledLimit leading_constant_family() { return ScaledLimit{ExactQ(4), true}; }

ExactQ multi_prime_proportion(const std::vector<std::pair<long, KodairaType>>& spec,
                              Mode mode) {
  std::set<long> seen;
  ExactQ prod(1);
  for (const auto& [p, type] : spec) {
    if (!seen.insert(p).second)
      throw DuplicatePrimeError("duplicate prime " + std::to_string(p));
    if (mode == Mode::given_bad) {
      prod *= proportion_given_bad(type, p);
    } else {
      prod *= proportion_absolute(type, p);
    }
  }
  return prod;
}

ZetaRatio semistable_star_density() {
  long double v = 2.0L * std::pow(kPi, 8.0L) / 31185.0L;
  return ZetaRatio{"zeta(10)/zeta(2) = 2*pi^8/31185", static_cast<double>(v)};
}

double zeta2() { return static_cast<double>(kPi * kPi / 6.0L); }

double zeta10() { return static_cast<double>(std::pow(kPi, 10.0L) / 93555.0L); }

double zeta_series(int s) {
  if (s < 2) throw std::invalid_argument("zeta_series requires s >= 2");
  const long N = s >= 6 ? 200 : 200'000;
  long double sum = 0.0L;
  for (long n = N; n >= 1; --n) sum += std::pow(static_cast<long double>(n), -s);
  // Euler-Maclaurin tail at N
  long double Nl = N;
  long double tail = std::pow(Nl, 1.0L - s) / (s - 1) - 0.5L * std::pow(Nl, -(long double)s) +
                     s / 12.0L * std::pow(Nl, -(long double)s - 1) -
                     (long double)s * (s + 1) * (s + 2) / 720.0L * std::pow(Nl, -(long double)s - 3);
  return static_cast<double>(sum + tail);
}

}  // namespace ecstat
