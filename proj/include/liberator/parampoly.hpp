#pragma once

#include "liberator/rational.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace liberator {

// Commutative monomial in named unknowns: (name, exponent) pairs sorted by
// name, exponents > 0. The empty vector is the constant monomial 1.
using Monomial = std::vector<std::pair<std::string, unsigned>>;

unsigned monomial_degree(const Monomial& m);

// Graded-lexicographic order: lower total degree first; ties broken by
// comparing exponents along ascending unknown names, where a higher power on
// an earlier name makes the monomial larger.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Polynomial with rational coefficients in named commuting unknowns.
// Terms are kept in a canonical sorted map with no zero coefficients, so
// equal polynomials compare and render identically.
class ParamPoly {
 public:
  using TermMap = std::map<Monomial, Rational, MonomialOrder>;

  ParamPoly() = default;
  ParamPoly(Rational c);  // NOLINT(google-explicit-constructor)
  ParamPoly(int c);       // NOLINT(google-explicit-constructor)
  static ParamPoly unknown(const std::string& name, unsigned power = 1);

  bool is_zero() const { return terms_.empty(); }
  // True for the zero polynomial and for nonzero constants.
  bool is_constant() const;
  // The value of a constant polynomial; throws std::logic_error otherwise.
  Rational constant_value() const;

  unsigned degree() const;  // total degree; 0 for the zero polynomial
  const TermMap& terms() const { return terms_; }
  Rational coeff(const Monomial& m) const;
  std::vector<std::string> unknowns() const;  // sorted, distinct

  void add_term(const Monomial& m, const Rational& c);

  ParamPoly& operator+=(const ParamPoly& o);
  ParamPoly& operator-=(const ParamPoly& o);
  ParamPoly& operator*=(const Rational& c);
  ParamPoly operator-() const;

  // Full evaluation. Every unknown that occurs must be assigned; a missing
  // one raises std::invalid_argument naming it.
  Rational eval(const std::map<std::string, Rational>& assignment) const;

  // Replaces each assigned unknown by the given polynomial; unassigned
  // unknowns stay symbolic.
  ParamPoly substitute(const std::map<std::string, ParamPoly>& assignment) const;

  std::string str() const;

  bool operator==(const ParamPoly& o) const { return terms_ == o.terms_; }

 private:
  TermMap terms_;
};

// Split of a polynomial by total degree in the unknowns.
struct DegreeSplit {
  ParamPoly constant;  // degree 0
  ParamPoly linear;    // degree exactly 1
  ParamPoly higher;    // degree >= 2
};
DegreeSplit degree_split(const ParamPoly& p);

ParamPoly operator+(ParamPoly a, const ParamPoly& b);
ParamPoly operator-(ParamPoly a, const ParamPoly& b);
ParamPoly operator*(const ParamPoly& a, const ParamPoly& b);
ParamPoly operator*(const Rational& c, ParamPoly p);

std::string to_string(const ParamPoly& p);

// Module-level operation names used throughout the docs and tests.
inline ParamPoly ppoly_mul(const ParamPoly& a, const ParamPoly& b) { return a * b; }
inline Rational ppoly_eval(const ParamPoly& p,
                           const std::map<std::string, Rational>& assignment) {
  return p.eval(assignment);
}
inline DegreeSplit ppoly_degree_split(const ParamPoly& p) {
  return degree_split(p);
}

}  // namespace liberator
