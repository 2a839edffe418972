#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

namespace ecstat {

/// Exact rationals travel as "num/den" ("num" alone for integers).
std::string to_fraction(const mpq_class& q);
mpq_class parse_fraction(const std::string& s);  // throws std::invalid_argument

/// Heights: exact integers ("100000000") or scientific notation with an
/// integral value ("1e8", "2.5e9"). Throws std::invalid_argument.
mpz_class parse_height(const std::string& s);

/// Comma-separated integer list ("5,7,11").
std::vector<long> parse_long_list(const std::string& s);

}  // namespace ecstat
