#include "ecstat/io.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ecstat {

std::string to_fraction(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class parse_fraction(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  mpq_class q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
    throw std::invalid_argument("malformed rational: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

mpz_class parse_height(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty height");
  const auto epos = s.find_first_of("eE");
  if (epos == std::string::npos) {
    mpz_class x;
    if (mpz_set_str(x.get_mpz_t(), s.c_str(), 10) != 0)
      throw std::invalid_argument("malformed height: " + s);
    if (x <= 0) throw std::invalid_argument("height must be positive: " + s);
    return x;
  }
  std::string mant = s.substr(0, epos);
  const std::string exps = s.substr(epos + 1);
  long exp = 0;
  try {
    std::size_t used = 0;
    exp = std::stol(exps, &used);
    if (used != exps.size()) throw std::invalid_argument(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed height exponent: " + s);
  }
  // shift any decimal point into the exponent
  const auto dot = mant.find('.');
  if (dot != std::string::npos) {
    exp -= static_cast<long>(mant.size() - dot - 1);
    mant.erase(dot, 1);
  }
  if (mant.empty() || mant == "-" || mant == "+")
    throw std::invalid_argument("malformed height: " + s);
  mpz_class x;
  if (mpz_set_str(x.get_mpz_t(), mant.c_str(), 10) != 0)
    throw std::invalid_argument("malformed height: " + s);
  if (exp < 0) {
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(-exp));
    if (x % pow10 != 0)
      throw std::invalid_argument("height is not an integer: " + s);
    x /= pow10;
  } else {
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(exp));
    x *= pow10;
  }
  if (x <= 0) throw std::invalid_argument("height must be positive: " + s);
  return x;
}

std::vector<long> parse_long_list(const std::string& s) {
  std::vector<long> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty list element in: " + s);
    std::size_t used = 0;
    out.push_back(std::stol(item, &used));
    if (used != item.size())
      throw std::invalid_argument("malformed integer: " + item);
  }
  if (out.empty()) throw std::invalid_argument("empty list: " + s);
  return out;
}

}  // namespace ecstat
