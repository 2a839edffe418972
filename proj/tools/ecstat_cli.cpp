#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ecstat/bounds.hpp"
#include "ecstat/census.hpp"
#include "ecstat/densities.hpp"
#include "ecstat/errors.hpp"
#include "ecstat/io.hpp"
#include "ecstat/kodaira.hpp"
#include "ecstat/residue_lab.hpp"

using nlohmann::json;
using namespace ecstat;

namespace {

// exit-code table (documented in README)
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kSingularCurve = 3,
  kNotReduced = 4,
  kBadPrime = 5,
  kBadType = 6,
  kFactorizationIncomplete = 7,
  kBoxTooLarge = 8,
  kCapacity = 9,
  kXTooSmall = 10,
  kUnknownLemma = 11,
  kMissingParameter = 12,
  kCorruptCheckpoint = 13,
  kRuntime = 14,
};

unsigned default_workers() {
  if (const char* env = std::getenv("ECSTAT_WORKERS")) {
    const long v = std::atol(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

KodairaType resolve_type(const std::string& t, std::optional<unsigned> n) {
  if (t == "In" || t == "I_n") {
    if (!n || *n < 1) throw MissingParameterError("type In requires --n >= 1");
    return KodairaType::I(*n);
  }
  if (t == "Instar" || t == "In*" || t == "I_n*") {
    if (!n || *n < 1) throw MissingParameterError("type In* requires --n >= 1");
    return KodairaType::Istar(*n);
  }
  auto k = KodairaType::parse(t);
  if (!k) throw BadTypeError("unknown Kodaira type: " + t);
  return *k;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct DensityRow {
  std::string label;
  ExactQ value;
};

std::vector<DensityRow> density_table(long p, Mode mode) {
  std::vector<DensityRow> rows;
  if (mode == Mode::absolute)
    rows.push_back({"I0", proportion_absolute(KodairaType::I0(), p)});
  rows.push_back({"In (n>=1, total)",
                  aggregate(ReductionClass::multiplicative, p, mode)});
  auto one = [&](const char* label, KodairaType t) {
    rows.push_back({label, mode == Mode::given_bad ? proportion_given_bad(t, p)
                                                   : proportion_absolute(t, p)});
  };
  one("II", KodairaType::II());
  one("III", KodairaType::III());
  one("IV", KodairaType::IV());
  one("I0*", KodairaType::I0star());
  rows.push_back({"In* (n>=1, total)",
                  aggregate(ReductionClass::potentially_multiplicative, p, mode)});
  one("IV*", KodairaType::IVstar());
  one("III*", KodairaType::IIIstar());
  one("II*", KodairaType::IIstar());
  return rows;
}

int cmd_density(long p, const std::string& type, std::optional<unsigned> n,
                const std::string& mode_s, const std::string& format) {
  const Mode mode = mode_s == "absolute" ? Mode::absolute : Mode::given_bad;
  std::vector<DensityRow> rows;
  if (!type.empty()) {
    KodairaType t = resolve_type(type, n);
    rows.push_back({t.name(), mode == Mode::given_bad ? proportion_given_bad(t, p)
                                                      : proportion_absolute(t, p)});
  } else {
    rows = density_table(p, mode);
  }
  if (format == "json") {
    json doc;
    doc["schema"] = "ecstat-density/1";
    doc["prime"] = p;
    doc["mode"] = mode == Mode::given_bad ? "given-bad" : "absolute";
    for (const auto& r : rows)
      doc["rows"].push_back({{"type", r.label},
                             {"fraction", to_fraction(r.value)},
                             {"decimal", r.value.get_d()}});
    std::cout << doc.dump(2) << "\n";
  } else if (format == "csv") {
    std::cout << "p,mode,type,fraction,decimal\n";
    for (const auto& r : rows)
      std::cout << p << "," << (mode == Mode::given_bad ? "given-bad" : "absolute")
                << "," << r.label << "," << to_fraction(r.value) << ","
                << fmt(r.value.get_d()) << "\n";
  } else if (!type.empty() && rows.size() == 1) {
    std::cout << to_fraction(rows[0].value) << "\n";
  } else {
    ExactQ sum(0);
    for (const auto& r : rows) {
      std::cout << r.label << "\t" << to_fraction(r.value) << "\t"
                << fmt(r.value.get_d()) << "\n";
      sum += r.value;
    }
    std::cout << "sum\t" << to_fraction(sum) << "\t" << fmt(sum.get_d()) << "\n";
  }
  return kOk;
}

int cmd_classify(const std::string& a_s, const std::string& b_s, std::optional<long> p,
                 bool all_primes, const std::string& format) {
  WeierstrassPair pair = WeierstrassPair::make(mpz_class(a_s), mpz_class(b_s));
  std::vector<LocalReduction> locals;
  if (all_primes) {
    for (const mpz_class& q : bad_primes_ge5(pair))
      locals.push_back(classify(pair, q.get_si()));
  } else {
    if (!p) throw MissingParameterError("classify requires --prime or --all-primes");
    locals.push_back(classify(pair, *p));
  }
  if (format == "json") {
    json doc;
    doc["schema"] = "ecstat-classify/1";
    doc["A"] = pair.A().get_str();
    doc["B"] = pair.B().get_str();
    doc["D"] = pair.D().get_str();
    for (const auto& lr : locals)
      doc["local"].push_back({{"p", lr.p},
                              {"type", lr.type.name()},
                              {"conductor_exponent", lr.conductor_exponent},
                              {"discriminant_valuation", lr.discriminant_valuation}});
    if (all_primes) doc["conductor_star"] = conductor_star(pair).get_str();
    std::cout << doc.dump(2) << "\n";
  } else {
    for (const auto& lr : locals)
      std::cout << "p=" << lr.p << " type=" << lr.type.name()
                << " f=" << lr.conductor_exponent << " v(D)=" << lr.discriminant_valuation
                << "\n";
    if (all_primes) std::cout << "N*=" << conductor_star(pair).get_str() << "\n";
  }
  return kOk;
}

json census_json(const CensusTally& t) {
  json doc;
  doc["schema"] = "ecstat-census/1";
  doc["X"] = t.X.get_str();
  doc["a_begin"] = t.a_begin;
  doc["a_end"] = t.a_end;
  doc["total"] = t.total_curves;
  doc["singular_skipped"] = t.singular_skipped;
  doc["nonreduced_skipped"] = t.nonreduced_skipped;
  doc["coprime"] = t.coprime_pairs;
  doc["star"] = t.star_semistable_pairs;
  for (long p : t.primes) {
    const PrimeTally& pt = t.per_prime.at(p);
    json jp;
    jp["p"] = p;
    jp["good"] = pt.good;
    for (const auto& [type, c] : pt.by_type)
      jp["types"].push_back({{"type", type.name()}, {"count", c}});
    doc["primes"].push_back(jp);
  }
  return doc;
}

int cmd_census(const std::string& height, const std::string& primes_s, unsigned workers,
               const std::string& out_path, const std::string& format,
               const std::string& checkpoint, long long stop_after) {
  const mpz_class X = parse_height(height);
  const std::vector<long> primes = parse_long_list(primes_s);
  CensusTally tally;
  bool resumed = false;
  if (!checkpoint.empty() && std::ifstream(checkpoint).good()) {
    tally = checkpoint_load(checkpoint);
    if (tally.X != X || tally.primes != primes)
      throw CorruptCheckpointError("checkpoint does not match the requested run");
    resumed = true;
  }
  CensusWindow w = CensusWindow::for_height(X);
  const long long a_bound = w.a_bound.get_si();
  if (!resumed) {
    const long long stop = stop_after != 0 ? std::min(stop_after, a_bound) : a_bound;
    tally = run_census_range(X, primes, -a_bound, stop, workers);
  } else if (!tally.complete()) {
    tally = resume_census(tally, workers);
  }
  if (!checkpoint.empty()) checkpoint_save(tally, checkpoint);
  if (!tally.complete()) {
    std::cerr << "partial census saved: A in [" << tally.a_begin << ", " << tally.a_end
              << "]\n";
    return kOk;
  }
  std::ostringstream body;
  if (format == "json")
    body << census_json(tally).dump(2) << "\n";
  else
    write_census_csv(tally, body);
  if (out_path.empty() || out_path == "-") {
    std::cout << body.str();
  } else {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write output: " + out_path);
    out << body.str();
  }
  return kOk;
}

int cmd_boxcheck(long p, const std::string& type, std::optional<unsigned> n,
                 std::uint64_t budget) {
  KodairaType t = resolve_type(type, n);
  ClassCountReport r = box_census(t, p, budget);
  std::cout << "p=" << p << " type=" << t.name() << " box=" << r.modulus_a << "x"
            << r.modulus_b << " closed=" << r.closed_form << " brute=" << r.brute_force
            << " " << (r.match ? "pass" : "FAIL") << "\n";
  return r.match ? kOk : kCheckFailed;
}

int cmd_bounds(const std::string& lemma, const std::string& height,
               std::optional<long> p, std::optional<unsigned> n, bool literal) {
  const mpz_class X = parse_height(height);
  BoundEnvelope env = bound_envelope(lemma, X, p, n, literal);
  const double x56 = std::pow(X.get_d(), 5.0 / 6.0);
  const double leading = lemma_leading_constant(lemma, p, n);
  const bool ok = env.lower <= env.upper;
  std::cout << "lemma=" << lemma << " X=" << X.get_str() << " lower=" << fmt(env.lower)
            << " upper=" << fmt(env.upper) << " lower/X^(5/6)=" << fmt(env.lower / x56)
            << " upper/X^(5/6)=" << fmt(env.upper / x56) << " leading=" << fmt(leading)
            << " " << (ok ? "pass" : "FAIL") << "\n";
  return ok ? kOk : kCheckFailed;
}

int cmd_convergence(const std::string& heights, long p, const std::string& quantities,
                    unsigned workers) {
  std::vector<mpz_class> ladder;
  {
    std::istringstream in(heights);
    std::string item;
    while (std::getline(in, item, ',')) ladder.push_back(parse_height(item));
  }
  std::vector<QuantityId> qs;
  {
    std::istringstream in(quantities);
    std::string item;
    while (std::getline(in, item, ',')) qs.push_back(QuantityId::parse(item));
  }
  const std::vector<ConvergenceRow> rows = convergence_report(ladder, p, qs, workers);
  std::cout << "X,quantity,empirical,theoretical,abs_err,rel_err\n";
  for (const auto& r : rows)
    std::cout << r.X.get_str() << "," << r.quantity << "," << fmt(r.empirical) << ","
              << fmt(r.theoretical) << "," << fmt(r.abs_err) << "," << fmt(r.rel_err)
              << "\n";
  // pass when every quantity's error improves from the first to the last height
  bool ok = true;
  if (ladder.size() >= 2) {
    for (std::size_t i = 0; i < qs.size(); ++i) {
      const double first = rows[i].rel_err;
      const double last = rows[(ladder.size() - 1) * qs.size() + i].rel_err;
      if (last > first) ok = false;
    }
  }
  std::cout << (ok ? "pass" : "FAIL") << "\n";
  return ok ? kOk : kCheckFailed;
}

KodairaType expected_twist(const KodairaType& t) {
  using Tag = KodairaType::Tag;
  switch (t.tag) {
    case Tag::I0: return KodairaType::I0star();
    case Tag::In: return KodairaType::Istar(t.n);
    case Tag::II: return KodairaType::IVstar();
    case Tag::III: return KodairaType::IIIstar();
    case Tag::IV: return KodairaType::IIstar();
    case Tag::I0star: return KodairaType::I0();
    case Tag::Instar: return KodairaType::I(t.n);
    case Tag::IVstar: return KodairaType::II();
    case Tag::IIIstar: return KodairaType::III();
    case Tag::IIstar: return KodairaType::IV();
  }
  throw BadTypeError("unknown type");
}

int cmd_twistcheck(std::uint64_t count, std::uint64_t seed, const std::string& primes_s) {
  const std::vector<long> primes = parse_long_list(primes_s);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> da(-10000, 10000);
  std::uniform_int_distribution<long long> db(-1000000, 1000000);
  std::uint64_t tested = 0, violations = 0;
  while (tested < count) {
    const mpz_class A(static_cast<long>(da(rng))), B(static_cast<long>(db(rng)));
    mpz_class D = 4 * A * A * A + 27 * B * B;
    if (D == 0) continue;
    std::optional<WeierstrassPair> pair;
    try {
      pair = WeierstrassPair::make(A, B);
    } catch (const NotReducedError&) {
      continue;
    }
    ++tested;
    for (long p : primes) {
      const KodairaType before = classify(*pair, p).type;
      const KodairaType after = classify(twist_by_p(*pair, p), p).type;
      if (after != expected_twist(before)) {
        ++violations;
        std::cout << "violation: A=" << A.get_str() << " B=" << B.get_str()
                  << " p=" << p << " " << before.name() << " -> " << after.name()
                  << "\n";
      }
    }
  }
  std::cout << "tested=" << tested << " primes=" << primes_s
            << " violations=" << violations << " " << (violations == 0 ? "pass" : "FAIL")
            << "\n";
  return violations == 0 ? kOk : kCheckFailed;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"ecstat: arithmetic statistics of rational elliptic curves at primes >= 5"};
  app.require_subcommand(1);

  // density
  auto* density = app.add_subcommand("density", "exact reduction-type densities");
  long d_p = 0;
  std::string d_type, d_mode = "given-bad", d_format = "table";
  unsigned d_n = 0;
  density->add_option("--prime", d_p, "prime p >= 5")->required();
  density->add_option("--type", d_type, "Kodaira type (omit for the full table)");
  density->add_option("--n", d_n, "index n for In / In*");
  density->add_option("--mode", d_mode)->check(CLI::IsMember({"given-bad", "absolute"}));
  density->add_option("--format", d_format)->check(CLI::IsMember({"csv", "json", "table"}));

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "Kodaira type at p >= 5");
  std::string c_a, c_b, c_format = "table";
  long c_p = 0;
  bool c_all = false;
  classify_cmd->add_option("--a", c_a, "coefficient A")->required();
  classify_cmd->add_option("--b", c_b, "coefficient B")->required();
  auto* c_popt = classify_cmd->add_option("--prime", c_p, "prime p >= 5");
  classify_cmd->add_flag("--all-primes", c_all, "classify at every bad prime >= 5");
  classify_cmd->add_option("--format", c_format)->check(CLI::IsMember({"json", "table"}));

  // census
  auto* census_cmd = app.add_subcommand("census", "exhaustive curve census up to height X");
  std::string s_height, s_primes, s_out, s_format = "csv", s_checkpoint;
  unsigned s_workers = default_workers();
  long long s_stop = 0;
  census_cmd->add_option("--height", s_height, "height bound X")->required();
  census_cmd->add_option("--primes", s_primes, "primes to classify, e.g. 5,7")->required();
  census_cmd->add_option("--workers", s_workers, "worker threads");
  census_cmd->add_option("--out", s_out, "output path (default stdout)");
  census_cmd->add_option("--format", s_format)->check(CLI::IsMember({"csv", "json"}));
  census_cmd->add_option("--checkpoint", s_checkpoint, "checkpoint file to save/resume");
  census_cmd->add_option("--stop-after", s_stop,
                         "stop after A column (testing interrupted runs)");

  // boxcheck
  auto* box = app.add_subcommand("boxcheck", "residue-box class-count verification");
  long x_p = 0;
  std::string x_type;
  unsigned x_n = 0;
  std::uint64_t x_budget = 1'000'000'000;
  box->add_option("--prime", x_p)->required();
  box->add_option("--type", x_type)->required();
  box->add_option("--n", x_n);
  box->add_option("--budget", x_budget, "pair budget");

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "finite-X bound envelopes");
  std::string b_lemma, b_height;
  long b_p = 0;
  unsigned b_n = 0;
  bool b_literal = false;
  bounds_cmd->add_option("--lemma", b_lemma)->required();
  bounds_cmd->add_option("--height", b_height)->required();
  auto* b_popt = bounds_cmd->add_option("--prime", b_p);
  auto* b_nopt = bounds_cmd->add_option("--n", b_n);
  bounds_cmd->add_flag("--literal", b_literal, "evaluate the printed tail coefficients");

  // convergence
  auto* conv = app.add_subcommand("convergence", "empirical vs theoretical over a ladder");
  std::string v_heights, v_quantities;
  long v_p = 0;
  unsigned v_workers = default_workers();
  conv->add_option("--heights", v_heights)->required();
  conv->add_option("--prime", v_p)->required();
  conv->add_option("--quantities", v_quantities)->required();
  conv->add_option("--workers", v_workers);

  // twistcheck
  auto* twist = app.add_subcommand("twistcheck", "metamorphic twist-pairing fuzz");
  std::uint64_t t_count = 10000, t_seed = 1;
  std::string t_primes = "5,7,11";
  twist->add_option("--count", t_count);
  twist->add_option("--seed", t_seed);
  twist->add_option("--primes", t_primes);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  if (*density)
    return cmd_density(d_p, d_type, d_n ? std::optional<unsigned>(d_n) : std::nullopt,
                       d_mode, d_format);
  if (*classify_cmd)
    return cmd_classify(c_a, c_b, *c_popt ? std::optional<long>(c_p) : std::nullopt,
                        c_all, c_format);
  if (*census_cmd)
    return cmd_census(s_height, s_primes, s_workers, s_out, s_format, s_checkpoint,
                      s_stop);
  if (*box)
    return cmd_boxcheck(x_p, x_type, x_n ? std::optional<unsigned>(x_n) : std::nullopt,
                        x_budget);
  if (*bounds_cmd)
    return cmd_bounds(b_lemma, b_height, *b_popt ? std::optional<long>(b_p) : std::nullopt,
                      *b_nopt ? std::optional<unsigned>(b_n) : std::nullopt, b_literal);
  if (*conv) return cmd_convergence(v_heights, v_p, v_quantities, v_workers);
  if (*twist) return cmd_twistcheck(t_count, t_seed, t_primes);
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const SingularCurveError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSingularCurve;
  } catch (const NotReducedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNotReduced;
  } catch (const BadPrimeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadPrime;
  } catch (const BadTypeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadType;
  } catch (const BadCombinationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadType;
  } catch (const DuplicatePrimeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadPrime;
  } catch (const FactorizationIncompleteError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFactorizationIncomplete;
  } catch (const BoxTooLargeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBoxTooLarge;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCapacity;
  } catch (const XTooSmallError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kXTooSmall;
  } catch (const UnknownLemmaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUnknownLemma;
  } catch (const MissingParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMissingParameter;
  } catch (const EmptyDenominatorError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  } catch (const CorruptCheckpointError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCorruptCheckpoint;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
}
