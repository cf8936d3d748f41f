#pragma once

#include "liberator/dynamics.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace liberator {

// Parse failure with 1-based position information.
struct ParseError : std::runtime_error {
  std::size_t line = 0;
  std::size_t column = 0;
  ParseError(std::string message, std::size_t line_, std::size_t column_);
};

// Parses an operator ODE system:
//
//   generators X Y
//   dX/dt = X^2 - {X,Y}
//   dY/dt = 3/2 Y^2 + (X - Y)
//
// Grammar: a "generators" line followed by exactly one equation per
// generator. Expressions admit + -, rational coefficients p or p/q,
// generator powers name^k (k >= 0), symmetrized pairs {A,B} = (AB + BA)/2,
// and parentheses. '*' between factors is optional. Blank lines and
// '#' comments are skipped. Errors carry line/column positions.
Dynamics parse_dynamics(const std::string& text);

// Parses a single expression over the given generators.
NCPoly parse_expression(const std::string& text, const GeneratorSet& gens);

// Parses "[A,B] = expr" into the pair indices (i < j) and the rhs f_ij,
// negating the rhs when the bracket is written in descending order.
std::pair<std::pair<std::size_t, std::size_t>, NCPoly> parse_relation(
    const std::string& text, const GeneratorSet& gens);

// Canonical rendering of a system; parse_dynamics(pretty_print(d)) == d.
std::string pretty_print(const Dynamics& dyn);

}  // namespace liberator
