#include "liberator/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace liberator {

std::string to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += "/" + denominator(r).str();
  }
  return s;
}

namespace {

Integer parse_integer(const std::string& text, bool allow_sign) {
  std::size_t i = 0;
  bool negative = false;
  if (allow_sign && i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  const std::size_t digits = i;
  if (i == text.size()) {
    throw std::invalid_argument("malformed rational: '" + text + "'");
  }
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw std::invalid_argument("malformed rational: '" + text + "'");
    }
  }
  Integer value(text.substr(digits));
  return negative ? Integer(-value) : value;
}

}  // namespace

Rational rational_from_string(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    return Rational(parse_integer(text, true));
  }
  const Integer num = parse_integer(text.substr(0, slash), true);
  const Integer den = parse_integer(text.substr(slash + 1), false);
  if (den == 0) {
    throw std::invalid_argument("zero denominator: '" + text + "'");
  }
  return Rational(num, den);
}

Integer height(const Rational& r) {
  Integer n = numerator(r);
  if (n < 0) n = -n;
  const Integer d = denominator(r);
  return n > d ? n : d;
}

}  // namespace liberator
