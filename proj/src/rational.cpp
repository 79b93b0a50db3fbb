#include "twpart/rational.hpp"

#include <charconv>

namespace twpart {

namespace {

long long parse_ll(const std::string& text, std::size_t begin, std::size_t end) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(text.data() + begin, text.data() + end, value);
  if (ec != std::errc() || ptr != text.data() + end)
    throw std::invalid_argument("not an integer: '" + text.substr(begin, end - begin) + "'");
  return value;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_ll(text, 0, text.size()));
  long long num = parse_ll(text, 0, slash);
  long long den = parse_ll(text, slash + 1, text.size());
  if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace twpart
