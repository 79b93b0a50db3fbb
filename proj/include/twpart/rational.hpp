#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace twpart {

// Exact rational arithmetic for conductance values and thresholds.
// All comparisons against delta-style bounds go through this type; no
// floating point is used anywhere a contract depends on the outcome.
using Rational = boost::rational<long long>;

inline long long rational_floor(const Rational& r) {
  long long q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}

inline long long rational_ceil(const Rational& r) {
  long long q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() > 0) ++q;
  return q;
}

// Parses "p" or "p/q". Throws std::invalid_argument on anything else.
Rational parse_rational(const std::string& text);

// Canonical "p/q" form (denominator always present, always positive).
std::string to_string(const Rational& r);

double to_double(const Rational& r);

}  // namespace twpart
