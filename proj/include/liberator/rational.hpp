#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace liberator {

using Integer = boost::multiprecision::cpp_int;

// Exact rational scalar. boost's cpp_rational keeps the canonical form we
// rely on everywhere: gcd(|num|, den) = 1, den >= 1, zero stored as 0/1.
using Rational = boost::multiprecision::cpp_rational;

// Renders "p/q", omitting "/q" when the denominator is 1.
std::string to_string(const Rational& r);

// Parses "p" or "p/q" with an optional leading sign on p.
// Throws std::invalid_argument on malformed input or zero denominator.
Rational rational_from_string(const std::string& text);

// max(|numerator|, denominator); used to pick small elimination pivots.
Integer height(const Rational& r);

}  // namespace liberator
