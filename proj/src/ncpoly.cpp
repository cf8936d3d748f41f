#include "liberator/ncpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace liberator {

std::size_t GeneratorSet::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  throw std::invalid_argument("unknown generator '" + name + "'");
}

bool WordOrder::operator()(const Word& a, const Word& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool word_sorted(const Word& w) { return std::is_sorted(w.begin(), w.end()); }

Word sorted_word(const std::vector<unsigned>& multidegree) {
  Word w;
  for (unsigned i = 0; i < multidegree.size(); ++i) {
    w.insert(w.end(), multidegree[i], i);
  }
  return w;
}

std::vector<unsigned> word_multidegree(const Word& w, std::size_t n) {
  std::vector<unsigned> m(n, 0);
  for (const unsigned g : w) {
    if (g >= n) throw std::invalid_argument("word letter out of range");
    ++m[g];
  }
  return m;
}

NCPoly::NCPoly(GeneratorSet gens) : gens_(std::move(gens)) {}

NCPoly NCPoly::scalar(GeneratorSet gens, ParamPoly c) {
  NCPoly p(std::move(gens));
  p.add_term(Word{}, c);
  return p;
}

NCPoly NCPoly::generator(GeneratorSet gens, std::size_t i) {
  if (i >= gens.size()) throw std::invalid_argument("generator index out of range");
  NCPoly p(std::move(gens));
  p.add_term(Word{static_cast<unsigned>(i)}, ParamPoly(1));
  return p;
}

NCPoly NCPoly::word(GeneratorSet gens, Word w, ParamPoly c) {
  for (const unsigned g : w) {
    if (g >= gens.size()) throw std::invalid_argument("word letter out of range");
  }
  NCPoly p(std::move(gens));
  p.add_term(w, c);
  return p;
}

unsigned NCPoly::degree() const {
  if (terms_.empty()) return 0;
  return static_cast<unsigned>(terms_.rbegin()->first.size());
}

bool NCPoly::concrete() const {
  for (const auto& [w, c] : terms_) {
    if (!c.is_constant()) return false;
  }
  return true;
}

ParamPoly NCPoly::coeff(const Word& w) const {
  const auto it = terms_.find(w);
  return it == terms_.end() ? ParamPoly() : it->second;
}

void NCPoly::add_term(const Word& w, const ParamPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
  if (!(gens_ == o.gens_)) throw std::invalid_argument("generator set mismatch");
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
  if (!(gens_ == o.gens_)) throw std::invalid_argument("generator set mismatch");
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

NCPoly NCPoly::operator-() const {
  NCPoly r(gens_);
  for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
  return r;
}

NCPoly NCPoly::truncated(unsigned cap) const {
  NCPoly r(gens_);
  for (const auto& [w, c] : terms_) {
    if (w.size() <= cap) r.terms_.emplace(w, c);
  }
  return r;
}

NCPoly NCPoly::substituted(
    const std::map<std::string, ParamPoly>& assignment) const {
  NCPoly r(gens_);
  for (const auto& [w, c] : terms_) {
    r.add_term(w, c.substitute(assignment));
  }
  return r;
}

NCPoly operator+(NCPoly a, const NCPoly& b) {
  a += b;
  return a;
}

NCPoly operator-(NCPoly a, const NCPoly& b) {
  a -= b;
  return a;
}

NCPoly operator*(const ParamPoly& c, NCPoly p) {
  NCPoly r(p.gens());
  for (const auto& [w, v] : p.terms()) r.add_term(w, c * v);
  return r;
}

NCPoly operator*(const Rational& c, NCPoly p) { return ParamPoly(c) * std::move(p); }

NCPoly nc_mul(const NCPoly& a, const NCPoly& b) {
  if (!(a.gens() == b.gens())) throw std::invalid_argument("generator set mismatch");
  NCPoly r(a.gens());
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      r.add_term(w, ca * cb);
    }
  }
  return r;
}

NCPoly operator*(const NCPoly& a, const NCPoly& b) { return nc_mul(a, b); }

NCPoly commutator(const NCPoly& a, const NCPoly& b) {
  return nc_mul(a, b) - nc_mul(b, a);
}

NCPoly weyl_symmetrize(const GeneratorSet& gens,
                       const std::vector<unsigned>& multidegree) {
  if (multidegree.size() != gens.size()) {
    throw std::invalid_argument("multidegree arity mismatch");
  }
  Word w = sorted_word(multidegree);
  NCPoly r(gens);
  if (w.empty()) {
    r.add_term(w, ParamPoly(1));
    return r;
  }
  std::vector<Word> orderings;
  do {
    orderings.push_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  const Rational share(1, static_cast<long>(orderings.size()));
  for (const Word& o : orderings) r.add_term(o, ParamPoly(share));
  return r;
}

std::string NCPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [w, c] = *it;
    std::string body;
    std::size_t run_start = 0;
    while (run_start < w.size()) {
      std::size_t k = run_start;
      while (k < w.size() && w[k] == w[run_start]) ++k;
      if (!body.empty()) body += "*";
      body += gens_.names.at(w[run_start]);
      if (k - run_start > 1) body += "^" + std::to_string(k - run_start);
      run_start = k;
    }

    std::string coeff_str;
    bool negative = false;
    if (c.is_constant()) {
      Rational v = c.constant_value();
      negative = v < 0;
      if (negative) v = -v;
      if (body.empty()) {
        coeff_str = to_string(v);
      } else if (v != 1) {
        coeff_str = to_string(v) + "*";
      }
    } else if (c.terms().size() == 1) {
      const auto& [m, v] = *c.terms().begin();
      negative = v < 0;
      ParamPoly mono;
      mono.add_term(m, negative ? Rational(-v) : v);
      coeff_str = mono.str();
      if (!body.empty()) coeff_str += "*";
    } else {
      coeff_str = "(" + c.str() + ")";
      if (!body.empty()) coeff_str += "*";
    }

    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    out += coeff_str + body;
  }
  return out;
}

std::string to_string(const NCPoly& p) { return p.str(); }

}  // namespace liberator
