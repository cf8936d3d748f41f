#include "liberator/parampoly.hpp"

#include <set>
#include <stdexcept>

namespace liberator {

unsigned monomial_degree(const Monomial& m) {
  unsigned d = 0;
  for (const auto& [name, e] : m) d += e;
  return d;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  const unsigned da = monomial_degree(a);
  const unsigned db = monomial_degree(b);
  if (da != db) return da < db;
  // Same degree: walk unknowns in ascending name order; the monomial with
  // the higher exponent at the first difference is the larger one.
  std::size_t ia = 0, ib = 0;
  while (ia < a.size() && ib < b.size()) {
    if (a[ia].first == b[ib].first) {
      if (a[ia].second != b[ib].second) {
        return a[ia].second < b[ib].second;  // a smaller iff lower power here
      }
      ++ia;
      ++ib;
    } else if (a[ia].first < b[ib].first) {
      // a has a positive power on an earlier name; b has zero there.
      return false;
    } else {
      return true;
    }
  }
  // One is a prefix of the other along shared names; with equal total degree
  // both must be exhausted simultaneously.
  return false;
}

ParamPoly::ParamPoly(Rational c) {
  if (c != 0) terms_.emplace(Monomial{}, std::move(c));
}

ParamPoly::ParamPoly(int c) : ParamPoly(Rational(c)) {}

ParamPoly ParamPoly::unknown(const std::string& name, unsigned power) {
  ParamPoly p;
  if (power == 0) return ParamPoly(1);
  p.terms_.emplace(Monomial{{name, power}}, Rational(1));
  return p;
}

bool ParamPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational ParamPoly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) {
    throw std::logic_error("constant_value on non-constant polynomial " + str());
  }
  return terms_.begin()->second;
}

unsigned ParamPoly::degree() const {
  if (terms_.empty()) return 0;
  return monomial_degree(terms_.rbegin()->first);
}

Rational ParamPoly::coeff(const Monomial& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<std::string> ParamPoly::unknowns() const {
  std::set<std::string> names;
  for (const auto& [m, c] : terms_) {
    for (const auto& [name, e] : m) names.insert(name);
  }
  return {names.begin(), names.end()};
}

void ParamPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

ParamPoly& ParamPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

ParamPoly ParamPoly::operator-() const {
  ParamPoly r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

namespace {

Monomial monomial_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  std::size_t ia = 0, ib = 0;
  while (ia < a.size() || ib < b.size()) {
    if (ib == b.size() || (ia < a.size() && a[ia].first < b[ib].first)) {
      r.push_back(a[ia++]);
    } else if (ia == a.size() || b[ib].first < a[ia].first) {
      r.push_back(b[ib++]);
    } else {
      r.emplace_back(a[ia].first, a[ia].second + b[ib].second);
      ++ia;
      ++ib;
    }
  }
  return r;
}

}  // namespace

ParamPoly operator+(ParamPoly a, const ParamPoly& b) {
  a += b;
  return a;
}

ParamPoly operator-(ParamPoly a, const ParamPoly& b) {
  a -= b;
  return a;
}

ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
  ParamPoly r;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      r.add_term(monomial_mul(ma, mb), ca * cb);
    }
  }
  return r;
}

ParamPoly operator*(const Rational& c, ParamPoly p) {
  p *= c;
  return p;
}

Rational ParamPoly::eval(const std::map<std::string, Rational>& assignment) const {
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational v = c;
    for (const auto& [name, e] : m) {
      const auto it = assignment.find(name);
      if (it == assignment.end()) {
        throw std::invalid_argument("unassigned unknown '" + name + "'");
      }
      for (unsigned k = 0; k < e; ++k) v *= it->second;
    }
    total += v;
  }
  return total;
}

ParamPoly ParamPoly::substitute(
    const std::map<std::string, ParamPoly>& assignment) const {
  ParamPoly total;
  for (const auto& [m, c] : terms_) {
    ParamPoly v(c);
    for (const auto& [name, e] : m) {
      const auto it = assignment.find(name);
      const ParamPoly base =
          it == assignment.end() ? ParamPoly::unknown(name) : it->second;
      for (unsigned k = 0; k < e; ++k) v = v * base;
    }
    total += v;
  }
  return total;
}

DegreeSplit degree_split(const ParamPoly& p) {
  DegreeSplit split;
  for (const auto& [m, c] : p.terms()) {
    const unsigned d = monomial_degree(m);
    if (d == 0) {
      split.constant.add_term(m, c);
    } else if (d == 1) {
      split.linear.add_term(m, c);
    } else {
      split.higher.add_term(m, c);
    }
  }
  return split;
}

std::string ParamPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  // Largest terms first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    std::string body;
    for (const auto& [name, e] : m) {
      if (!body.empty()) body += "*";
      body += name;
      if (e != 1) body += "^" + std::to_string(e);
    }
    if (body.empty()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += body;
    } else {
      out += to_string(mag) + "*" + body;
    }
  }
  return out;
}

std::string to_string(const ParamPoly& p) { return p.str(); }

}  // namespace liberator
