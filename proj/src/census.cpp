#include "ecstat/census.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "ecstat/densities.hpp"
#include "ecstat/errors.hpp"
#include "ecstat/primes.hpp"

namespace ecstat {

std::uint64_t PrimeTally::bad() const {
  std::uint64_t s = 0;
  for (const auto& [t, c] : by_type) s += c;
  return s;
}

std::uint64_t PrimeTally::multiplicative() const {
  std::uint64_t s = 0;
  for (const auto& [t, c] : by_type)
    if (t.tag == KodairaType::Tag::In) s += c;
  return s;
}

std::uint64_t PrimeTally::type_count(const KodairaType& t) const {
  auto it = by_type.find(t);
  return it == by_type.end() ? 0 : it->second;
}

PrimeTally& PrimeTally::operator+=(const PrimeTally& o) {
  good += o.good;
  for (const auto& [t, c] : o.by_type) by_type[t] += c;
  return *this;
}

bool CensusTally::complete() const {
  CensusWindow w = CensusWindow::for_height(X);
  long long a = w.a_bound.get_si();
  return a_begin == -a && a_end == a;
}

namespace {

void add_counts(CensusTally& into, const CensusTally& from) {
  into.total_curves += from.total_curves;
  into.singular_skipped += from.singular_skipped;
  into.nonreduced_skipped += from.nonreduced_skipped;
  into.coprime_pairs += from.coprime_pairs;
  into.star_semistable_pairs += from.star_semistable_pairs;
  for (const auto& [p, pt] : from.per_prime) into.per_prime[p] += pt;
}

struct LocalPrimeTally {
  std::uint64_t good = 0;
  std::uint64_t fixed[10] = {};  // indexed by Tag; In/Instar slots unused
  std::map<unsigned, std::uint64_t> in;
  std::map<unsigned, std::uint64_t> instar;

  void add(const KodairaType& t) {
    using Tag = KodairaType::Tag;
    if (t.tag == Tag::In)
      ++in[t.n];
    else if (t.tag == Tag::Instar)
      ++instar[t.n];
    else
      ++fixed[static_cast<unsigned>(t.tag)];
  }

  PrimeTally finish() const {
    using Tag = KodairaType::Tag;
    PrimeTally pt;
    pt.good = good + fixed[static_cast<unsigned>(Tag::I0)];
    auto put = [&](KodairaType t, std::uint64_t c) {
      if (c) pt.by_type[t] += c;
    };
    for (const auto& [n, c] : in) put(KodairaType::I(n), c);
    put(KodairaType::II(), fixed[static_cast<unsigned>(Tag::II)]);
    put(KodairaType::III(), fixed[static_cast<unsigned>(Tag::III)]);
    put(KodairaType::IV(), fixed[static_cast<unsigned>(Tag::IV)]);
    put(KodairaType::I0star(), fixed[static_cast<unsigned>(Tag::I0star)]);
    for (const auto& [n, c] : instar) put(KodairaType::Istar(n), c);
    put(KodairaType::IVstar(), fixed[static_cast<unsigned>(Tag::IVstar)]);
    put(KodairaType::IIIstar(), fixed[static_cast<unsigned>(Tag::IIIstar)]);
    put(KodairaType::IIstar(), fixed[static_cast<unsigned>(Tag::IIstar)]);
    return pt;
  }
};

// One contiguous strip of A-columns, int64 fast path.
CensusTally scan_strip(const mpz_class& X, const std::vector<long>& primes,
                       std::int64_t b_bound, std::int64_t a_lo, std::int64_t a_hi,
                       const std::vector<std::uint32_t>& small_primes) {
  CensusTally t;
  t.X = X;
  t.a_begin = a_lo;
  t.a_end = a_hi;
  t.primes = primes;
  std::vector<LocalPrimeTally> local(primes.size());

  // sixth powers to test against B when q^4 | A
  std::vector<std::int64_t> q6_all;
  for (std::uint32_t q : small_primes) {
    long double q6 = std::pow(static_cast<long double>(q), 6.0L);
    if (q6 <= static_cast<long double>(b_bound))
      q6_all.push_back(static_cast<std::int64_t>(q) * q * q * q * q * q);
    else
      break;
  }

  std::vector<std::int64_t> q6_list;
  for (std::int64_t A = a_lo; A <= a_hi; ++A) {
    q6_list.clear();
    if (A == 0) {
      q6_list = q6_all;
    } else {
      const std::uint64_t absA = static_cast<std::uint64_t>(A < 0 ? -A : A);
      for (std::uint32_t q : small_primes) {
        const std::uint64_t q4 =
            static_cast<std::uint64_t>(q) * q * q * q;
        if (q4 > absA) break;
        if (absA % q4 == 0)
          q6_list.push_back(static_cast<std::int64_t>(q4) * q * q);
      }
    }
    const std::int64_t a3_4 = 4 * A * A * A;
    const std::uint64_t absA = static_cast<std::uint64_t>(A < 0 ? -A : A);
    for (std::int64_t B = -b_bound; B <= b_bound; ++B) {
      const std::int64_t D = a3_4 + 27 * B * B;
      if (D == 0) {
        ++t.singular_skipped;
        continue;
      }
      bool reduced = true;
      for (std::int64_t q6 : q6_list) {
        if (B % q6 == 0) {
          reduced = false;
          break;
        }
      }
      if (!reduced) {
        ++t.nonreduced_skipped;
        continue;
      }
      ++t.total_curves;
      std::uint64_t g = std::gcd(absA, static_cast<std::uint64_t>(B < 0 ? -B : B));
      if (g == 1) ++t.coprime_pairs;
      while ((g & 1) == 0) g >>= 1;
      while (g % 3 == 0) g /= 3;
      if (g == 1) ++t.star_semistable_pairs;
      for (std::size_t i = 0; i < primes.size(); ++i) {
        const long p = primes[i];
        if (D % p != 0)
          ++local[i].good;
        else
          local[i].add(classify_i64(A, B, p));
      }
    }
  }
  for (std::size_t i = 0; i < primes.size(); ++i) t.per_prime[primes[i]] = local[i].finish();
  return t;
}

void validate_primes(const std::vector<long>& primes) {
  std::vector<long> sorted = primes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DuplicatePrimeError("census primes must be distinct");
  for (long p : primes)
    if (p < 5 || !is_prime(mpz_class(p)))
      throw BadPrimeError("census prime must be >= 5 and prime, got " +
                          std::to_string(p));
}

}  // namespace

CensusTally run_census_range(const mpz_class& X, const std::vector<long>& primes,
                             long long a_from, long long a_to, unsigned workers) {
  validate_primes(primes);
  CensusWindow w = CensusWindow::for_height(X);
  // int64 fast path: D = 4A^3 + 27B^2 <= 31 X must fit
  if (X > mpz_class("290000000000000000"))
    throw CapacityError("height bound exceeds the 64-bit census capacity");
  const std::int64_t a_bound = w.a_bound.get_si();
  const std::int64_t b_bound = w.b_bound.get_si();
  if (a_from < -a_bound || a_to > a_bound || a_from > a_to)
    throw std::invalid_argument("census A range outside window");
  if (workers == 0) workers = 1;

  std::uint32_t sieve_to = 8;
  while (static_cast<long double>(sieve_to) * sieve_to * sieve_to * sieve_to <
         static_cast<long double>(a_bound))
    ++sieve_to;
  while (std::pow(static_cast<long double>(sieve_to), 6.0L) <
         static_cast<long double>(b_bound))
    ++sieve_to;
  const std::vector<std::uint32_t> small_primes = primes_up_to(sieve_to);

  // contiguous strips pulled off an atomic cursor; merged in strip order
  const long long span = a_to - a_from + 1;
  const long long n_chunks =
      std::min<long long>(span, std::max<long long>(workers * 8, 1));
  const long long chunk = (span + n_chunks - 1) / n_chunks;
  std::vector<CensusTally> parts(static_cast<std::size_t>(n_chunks));
  std::atomic<long long> cursor{0};
  auto worker = [&] {
    for (;;) {
      const long long idx = cursor.fetch_add(1);
      if (idx >= n_chunks) break;
      const long long lo = a_from + idx * chunk;
      const long long hi = std::min<long long>(lo + chunk - 1, a_to);
      parts[static_cast<std::size_t>(idx)] =
          scan_strip(X, primes, b_bound, lo, hi, small_primes);
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  CensusTally out;
  out.X = X;
  out.a_begin = a_from;
  out.a_end = a_to;
  out.primes = primes;
  for (long p : primes) out.per_prime[p];  // ensure all keys exist
  for (const CensusTally& part : parts) add_counts(out, part);
  return out;
}

CensusTally run_census(const mpz_class& X, const std::vector<long>& primes,
                       unsigned workers) {
  CensusWindow w = CensusWindow::for_height(X);
  const long long a = w.a_bound.get_si();
  return run_census_range(X, primes, -a, a, workers);
}

void CensusTally::merge(const CensusTally& next) {
  if (next.X != X || next.primes != primes)
    throw std::invalid_argument("merge: tallies from different runs");
  if (next.a_begin != a_end + 1)
    throw std::invalid_argument("merge: strips not adjacent");
  add_counts(*this, next);
  a_end = next.a_end;
}

CensusTally resume_census(const CensusTally& partial, unsigned workers) {
  CensusWindow w = CensusWindow::for_height(partial.X);
  const long long a = w.a_bound.get_si();
  if (partial.a_begin != -a)
    throw std::invalid_argument("resume: tally does not start at the window edge");
  if (partial.a_end >= a) return partial;
  CensusTally rest =
      run_census_range(partial.X, partial.primes, partial.a_end + 1, a, workers);
  CensusTally out = partial;
  out.merge(rest);
  return out;
}

std::string QuantityId::name() const {
  switch (kind) {
    case Kind::total: return "total";
    case Kind::height_normalized: return "height-normalized";
    case Kind::bad_share: return "bad-share";
    case Kind::good_share: return "good-share";
    case Kind::mult_given_bad: return "mult-given-bad";
    case Kind::type_given_bad: return "type-given-bad:" + type.name();
    case Kind::type_absolute: return "type-absolute:" + type.name();
    case Kind::coprime_share: return "coprime-share";
    case Kind::star_share: return "star-share";
  }
  return "?";
}

QuantityId QuantityId::parse(const std::string& s) {
  QuantityId q;
  auto with_type = [&](Kind k, const std::string& rest) {
    auto t = KodairaType::parse(rest);
    if (!t) throw std::invalid_argument("unknown Kodaira type: " + rest);
    q.kind = k;
    q.type = *t;
    return q;
  };
  if (s == "total") q.kind = Kind::total;
  else if (s == "height-normalized") q.kind = Kind::height_normalized;
  else if (s == "bad-share") q.kind = Kind::bad_share;
  else if (s == "good-share") q.kind = Kind::good_share;
  else if (s == "mult-given-bad") q.kind = Kind::mult_given_bad;
  else if (s == "coprime-share") q.kind = Kind::coprime_share;
  else if (s == "star-share") q.kind = Kind::star_share;
  else if (s.starts_with("type-given-bad:"))
    return with_type(Kind::type_given_bad, s.substr(15));
  else if (s.starts_with("type-absolute:"))
    return with_type(Kind::type_absolute, s.substr(14));
  else
    throw std::invalid_argument("unknown quantity: " + s);
  return q;
}

namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw EmptyDenominatorError("empty denominator in density");
  return static_cast<double>(num) / static_cast<double>(den);
}

const PrimeTally& tally_at(const CensusTally& t, long p) {
  auto it = t.per_prime.find(p);
  if (it == t.per_prime.end())
    throw std::invalid_argument("census did not track prime " + std::to_string(p));
  return it->second;
}

}  // namespace

double empirical_density(const CensusTally& tally, const QuantityId& q, long p) {
  using Kind = QuantityId::Kind;
  switch (q.kind) {
    case Kind::total: return static_cast<double>(tally.total_curves);
    case Kind::height_normalized: {
      const double x = tally.X.get_d();
      return static_cast<double>(tally.total_curves) / std::pow(x, 5.0 / 6.0);
    }
    case Kind::bad_share:
      return ratio(tally_at(tally, p).bad(), tally.total_curves);
    case Kind::good_share:
      return ratio(tally_at(tally, p).good, tally.total_curves);
    case Kind::mult_given_bad: {
      const PrimeTally& pt = tally_at(tally, p);
      return ratio(pt.multiplicative(), pt.bad());
    }
    case Kind::type_given_bad: {
      const PrimeTally& pt = tally_at(tally, p);
      return ratio(pt.type_count(q.type), pt.bad());
    }
    case Kind::type_absolute:
      return ratio(tally_at(tally, p).type_count(q.type), tally.total_curves);
    case Kind::coprime_share: return ratio(tally.coprime_pairs, tally.total_curves);
    case Kind::star_share:
      return ratio(tally.star_semistable_pairs, tally.total_curves);
  }
  throw std::invalid_argument("unknown quantity");
}

double theoretical_density(const QuantityId& q, long p) {
  using Kind = QuantityId::Kind;
  switch (q.kind) {
    case Kind::total:
      throw std::invalid_argument("raw totals have no limiting value");
    case Kind::height_normalized: return 4.0 / zeta10();
    case Kind::bad_share:
      return aggregate(ReductionClass::bad, p, Mode::absolute).get_d();
    case Kind::good_share:
      return aggregate(ReductionClass::good, p, Mode::absolute).get_d();
    case Kind::mult_given_bad:
      return aggregate(ReductionClass::multiplicative, p, Mode::given_bad).get_d();
    case Kind::type_given_bad: return proportion_given_bad(q.type, p).get_d();
    case Kind::type_absolute: return proportion_absolute(q.type, p).get_d();
    case Kind::coprime_share: return semistable_star_density().value;
    case Kind::star_share: {
      // product over q >= 5 of (1 - q^-2)/(1 - q^-10)
      const double f2 = (1.0 - std::pow(2.0, -10)) / (1.0 - 0.25);
      const double f3 = (1.0 - std::pow(3.0, -10)) / (1.0 - 1.0 / 9.0);
      return semistable_star_density().value * f2 * f3;
    }
  }
  throw std::invalid_argument("unknown quantity");
}

std::vector<ConvergenceRow> convergence_report(const std::vector<mpz_class>& ladder,
                                               long p,
                                               const std::vector<QuantityId>& quantities,
                                               unsigned workers) {
  for (std::size_t i = 1; i < ladder.size(); ++i)
    if (ladder[i] <= ladder[i - 1])
      throw std::invalid_argument("height ladder must be strictly increasing");
  std::vector<ConvergenceRow> rows;
  for (const mpz_class& X : ladder) {
    CensusTally t = run_census(X, {p}, workers);
    for (const QuantityId& q : quantities) {
      ConvergenceRow r;
      r.X = X;
      r.quantity = q.name();
      r.empirical = empirical_density(t, q, p);
      r.theoretical = theoretical_density(q, p);
      r.abs_err = std::abs(r.empirical - r.theoretical);
      r.rel_err = r.theoretical == 0 ? 0 : r.abs_err / std::abs(r.theoretical);
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

namespace {

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

void checkpoint_save(const CensusTally& tally, const std::string& path) {
  std::ostringstream body;
  body << "ecstat-checkpoint v1\n";
  body << "X " << tally.X.get_str() << "\n";
  body << "arange " << tally.a_begin << " " << tally.a_end << "\n";
  body << "counts " << tally.total_curves << " " << tally.singular_skipped << " "
       << tally.nonreduced_skipped << " " << tally.coprime_pairs << " "
       << tally.star_semistable_pairs << "\n";
  body << "primes " << tally.primes.size() << "\n";
  for (long p : tally.primes) {
    const PrimeTally& pt = tally.per_prime.at(p);
    body << "prime " << p << " good " << pt.good << " ntypes " << pt.by_type.size()
         << "\n";
    for (const auto& [t, c] : pt.by_type) body << "type " << t.name() << " " << c << "\n";
  }
  body << "end\n";
  const std::string payload = body.str();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write checkpoint: " + path);
  char hex[32];
  std::snprintf(hex, sizeof hex, "%016" PRIx64, fnv1a(payload));
  out << payload << "checksum " << hex << "\n";
}

CensusTally checkpoint_load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorruptCheckpointError("cannot open checkpoint: " + path);
  std::ostringstream all;
  all << in.rdbuf();
  const std::string data = all.str();
  const std::string marker = "checksum ";
  const std::size_t pos = data.rfind(marker);
  if (pos == std::string::npos)
    throw CorruptCheckpointError("checkpoint has no checksum line");
  const std::string payload = data.substr(0, pos);
  const std::string stored = data.substr(pos + marker.size());
  char hex[32];
  std::snprintf(hex, sizeof hex, "%016" PRIx64, fnv1a(payload));
  if (stored.substr(0, 16) != hex)
    throw CorruptCheckpointError("checkpoint checksum mismatch");

  std::istringstream body(payload);
  std::string line;
  auto fail = [&](const std::string& why) -> void {
    throw CorruptCheckpointError("malformed checkpoint: " + why);
  };
  if (!std::getline(body, line) || line != "ecstat-checkpoint v1") fail("header");
  CensusTally t;
  std::string tok, xs;
  body >> tok >> xs;
  if (tok != "X") fail("X");
  t.X = mpz_class(xs);
  body >> tok >> t.a_begin >> t.a_end;
  if (tok != "arange") fail("arange");
  body >> tok >> t.total_curves >> t.singular_skipped >> t.nonreduced_skipped >>
      t.coprime_pairs >> t.star_semistable_pairs;
  if (tok != "counts") fail("counts");
  std::size_t nprimes = 0;
  body >> tok >> nprimes;
  if (tok != "primes") fail("primes");
  for (std::size_t i = 0; i < nprimes; ++i) {
    long p = 0;
    std::uint64_t good = 0;
    std::size_t ntypes = 0;
    std::string kg, kn;
    body >> tok >> p >> kg >> good >> kn >> ntypes;
    if (tok != "prime" || kg != "good" || kn != "ntypes") fail("prime record");
    t.primes.push_back(p);
    PrimeTally& pt = t.per_prime[p];
    pt.good = good;
    for (std::size_t j = 0; j < ntypes; ++j) {
      std::string name;
      std::uint64_t c = 0;
      body >> tok >> name >> c;
      if (tok != "type") fail("type record");
      auto kt = KodairaType::parse(name);
      if (!kt) fail("type name");
      pt.by_type[*kt] = c;
    }
  }
  body >> tok;
  if (tok != "end") fail("trailer");
  return t;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string qstr(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace

void write_census_csv(const CensusTally& tally, std::ostream& out) {
  out << "X,p,type,count,share_given_bad,share_absolute,theory_given_bad,"
         "theory_absolute,abs_err,rel_err\n";
  const std::string X = tally.X.get_str();
  auto row_plain = [&](const std::string& what, std::uint64_t count) {
    out << X << ",," << what << "," << count << ",,,,,,\n";
  };
  row_plain("total", tally.total_curves);
  row_plain("singular", tally.singular_skipped);
  row_plain("nonreduced", tally.nonreduced_skipped);
  const double zr = semistable_star_density().value;
  {
    const double emp = static_cast<double>(tally.coprime_pairs) /
                       static_cast<double>(tally.total_curves);
    out << X << ",,coprime," << tally.coprime_pairs << ",," << fmt(emp) << ",,"
        << fmt(zr) << "," << fmt(std::abs(emp - zr)) << ","
        << fmt(std::abs(emp - zr) / zr) << "\n";
  }
  {
    const double theo = theoretical_density({QuantityId::Kind::star_share, {}});
    const double emp = static_cast<double>(tally.star_semistable_pairs) /
                       static_cast<double>(tally.total_curves);
    out << X << ",,star," << tally.star_semistable_pairs << ",," << fmt(emp) << ",,"
        << fmt(theo) << "," << fmt(std::abs(emp - theo)) << ","
        << fmt(std::abs(emp - theo) / theo) << "\n";
  }
  for (long p : tally.primes) {
    const PrimeTally& pt = tally.per_prime.at(p);
    const std::uint64_t bad = pt.bad();
    {
      const mpq_class theo = proportion_absolute(KodairaType::I0(), p);
      const double emp = static_cast<double>(pt.good) /
                         static_cast<double>(tally.total_curves);
      const double th = theo.get_d();
      out << X << "," << p << ",I0," << pt.good << ",," << fmt(emp) << ",,"
          << qstr(theo) << "," << fmt(std::abs(emp - th)) << ","
          << fmt(std::abs(emp - th) / th) << "\n";
    }
    for (const auto& [t, c] : pt.by_type) {
      const mpq_class tgb = proportion_given_bad(t, p);
      const mpq_class tab = proportion_absolute(t, p);
      const double egb =
          bad ? static_cast<double>(c) / static_cast<double>(bad) : 0.0;
      const double eab =
          static_cast<double>(c) / static_cast<double>(tally.total_curves);
      const double th = tab.get_d();
      out << X << "," << p << "," << t.name() << "," << c << "," << fmt(egb) << ","
          << fmt(eab) << "," << qstr(tgb) << "," << qstr(tab) << ","
          << fmt(std::abs(eab - th)) << "," << fmt(std::abs(eab - th) / th) << "\n";
    }
  }
}

}  // namespace ecstat
