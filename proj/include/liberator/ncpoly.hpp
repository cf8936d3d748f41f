#pragma once

#include "liberator/parampoly.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace liberator {

// Ordered list of generator names; the list order is the generator order
// used by sorted words, normal forms and rendering.
struct GeneratorSet {
  std::vector<std::string> names;

  std::size_t size() const { return names.size(); }
  // Index of a declared generator; throws std::invalid_argument otherwise.
  std::size_t index_of(const std::string& name) const;
  bool operator==(const GeneratorSet& o) const = default;
};

// Word in the free monoid on the generators, as a sequence of generator
// indices. The empty word is the unit.
using Word = std::vector<unsigned>;

// Graded-lexicographic word order: shorter first, ties by index sequence.
struct WordOrder {
  bool operator()(const Word& a, const Word& b) const;
};

bool word_sorted(const Word& w);  // nondecreasing indices
Word sorted_word(const std::vector<unsigned>& multidegree);
std::vector<unsigned> word_multidegree(const Word& w, std::size_t n);

// Element of the free associative algebra on a GeneratorSet, with ParamPoly
// coefficients. Terms are a canonical word-sorted map without zeros.
class NCPoly {
 public:
  using TermMap = std::map<Word, ParamPoly, WordOrder>;

  explicit NCPoly(GeneratorSet gens);
  static NCPoly scalar(GeneratorSet gens, ParamPoly c);
  static NCPoly generator(GeneratorSet gens, std::size_t i);
  static NCPoly word(GeneratorSet gens, Word w, ParamPoly c = ParamPoly(1));

  const GeneratorSet& gens() const { return gens_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned degree() const;  // longest word; 0 for the zero element
  bool concrete() const;    // no symbolic unknowns in any coefficient
  ParamPoly coeff(const Word& w) const;

  void add_term(const Word& w, const ParamPoly& c);

  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  NCPoly operator-() const;

  // Drops words of degree > cap.
  NCPoly truncated(unsigned cap) const;

  // Substitutes values for unknowns inside every coefficient.
  NCPoly substituted(const std::map<std::string, ParamPoly>& assignment) const;

  std::string str() const;

  bool operator==(const NCPoly& o) const {
    return gens_ == o.gens_ && terms_ == o.terms_;
  }

 private:
  GeneratorSet gens_;
  TermMap terms_;
};

NCPoly operator+(NCPoly a, const NCPoly& b);
NCPoly operator-(NCPoly a, const NCPoly& b);
NCPoly operator*(const ParamPoly& c, NCPoly p);
NCPoly operator*(const Rational& c, NCPoly p);

// Free product; throws std::invalid_argument on generator-set mismatch.
NCPoly nc_mul(const NCPoly& a, const NCPoly& b);
NCPoly operator*(const NCPoly& a, const NCPoly& b);

// [a, b] = ab - ba.
NCPoly commutator(const NCPoly& a, const NCPoly& b);

// Symmetrized monomial of the given multidegree: the uniform average of all
// distinct orderings of the letters (so weyl_symmetrize({1,1}) = (XY+YX)/2).
NCPoly weyl_symmetrize(const GeneratorSet& gens,
                       const std::vector<unsigned>& multidegree);

std::string to_string(const NCPoly& p);

}  // namespace liberator
