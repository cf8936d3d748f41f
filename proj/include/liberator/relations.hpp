#pragma once

#include "liberator/ncpoly.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace liberator {

// Degree truncation policy. Under DegreeCap{D} every computation happens in
// the quotient by the span of words of degree > D; Unbounded keeps all words
// but rejects rewriting steps that raise word degree.
struct Unbounded {
  bool operator==(const Unbounded&) const = default;
};
struct DegreeCap {
  unsigned cap = 0;
  bool operator==(const DegreeCap&) const = default;
};
using Truncation = std::variant<Unbounded, DegreeCap>;

std::optional<unsigned> cap_of(const Truncation& t);

// Raised when a normal form cannot be computed under the configured policy
// (degree-raising rewrite without a cap, non-orientable parametric relation,
// or a rewriting cycle outside the linear-algebra engine's scope).
struct ReductionError : std::runtime_error {
  enum class Kind { DegreeRaising, NotOrientable, Cycle, Unsupported };
  Kind kind;
  ReductionError(Kind k, const std::string& what)
      : std::runtime_error(what), kind(k) {}
};

// Commutation data for a free algebra: one right-hand side f_ij per
// generator pair i < j, encoding the relation e_i e_j - e_j e_i = f_ij.
// Pairs never set keep the commuting default f_ij = 0. Instances are
// assembled with set_rhs and then treated as immutable values.
class RelationSet {
 public:
  RelationSet(GeneratorSet gens, Truncation trunc);

  RelationSet& set_rhs(std::size_t i, std::size_t j, NCPoly f);

  const GeneratorSet& gens() const { return gens_; }
  const Truncation& truncation() const { return trunc_; }
  const NCPoly& rhs(std::size_t i, std::size_t j) const;

  bool concrete() const;  // no symbolic unknowns in any rhs

  // The relation element e_i e_j - e_j e_i - f_ij of the defining ideal.
  NCPoly element(std::size_t i, std::size_t j) const;

  RelationSet substituted(const std::map<std::string, ParamPoly>& a) const;
  RelationSet scaled(const Rational& c) const;  // every rhs multiplied by c

 private:
  GeneratorSet gens_;
  Truncation trunc_;
  NCPoly zero_;  // returned for pairs that keep the commuting default
  std::map<std::pair<std::size_t, std::size_t>, NCPoly> rhs_;
};

// Normal-form engine for one RelationSet. Construction is cheap; reductions
// are memoized per instance, so reuse one Reducer across a batch of calls.
// Not safe for concurrent use.
//
// Two engines cooperate:
//  * rewriting: each pair is oriented into a rule e_j e_i -> (e_i e_j - g)
//    / (1 + theta) where theta is the (rational) coefficient of e_j e_i in
//    f_ij; descents are rewritten leftmost-first with memoized word forms.
//  * span reduction: when orientation fails (1 + theta = 0) or rewriting
//    cycles, and every relation element is homogeneous of degree 2 with
//    concrete coefficients, inputs are reduced against a per-degree echelon
//    basis of { u * element * v }, which is exact in that homogeneous case.
class Reducer {
 public:
  explicit Reducer(const RelationSet& rels);

  NCPoly reduce(const NCPoly& x);

  // Applies the single rewrite for the descent at position pos (so for the
  // pair (w[pos+1], w[pos])) and returns the unreduced result; used by the
  // confluence check. Requires the rewriting engine.
  NCPoly rewrite_once(const Word& w, std::size_t pos);

  bool uses_rewriting() const { return mode_ == Mode::Rewriting; }

 private:
  enum class Mode { Rewriting, Span, Unavailable };

  NCPoly reduce_word(const Word& w);
  NCPoly reduce_rewriting(const NCPoly& x);
  NCPoly reduce_span(const NCPoly& x);
  const std::map<Word, NCPoly, WordOrder>& span_rows(unsigned degree);

  const RelationSet rels_;
  std::optional<unsigned> cap_;
  Mode mode_ = Mode::Unavailable;
  std::string unavailable_reason_;
  ReductionError::Kind unavailable_kind_ = ReductionError::Kind::Unsupported;
  bool span_allowed_ = false;

  // rewriting engine state
  std::map<std::pair<std::size_t, std::size_t>, NCPoly> rule_rhs_;
  std::map<Word, NCPoly, WordOrder> memo_;
  std::set<Word, WordOrder> in_progress_;

  // span engine state: per degree, leading word -> inter-reduced row
  std::map<unsigned, std::map<Word, NCPoly, WordOrder>> echelon_;
};

// Normal form of x modulo the relations (convenience wrapper; heavy loops
// should hold a Reducer to share its memo).
NCPoly normal_form(const NCPoly& x, const RelationSet& rels);

// Consistency evidence for a relation set at desk scale.
struct PbwReport {
  struct DegreeCount {
    unsigned degree = 0;
    std::size_t found = 0;     // dimension contributed by this degree
    std::size_t expected = 0;  // C(n + d - 1, d)
  };
  struct OverlapFailure {
    std::size_t i = 0, j = 0, k = 0;  // triple k > j > i
    NCPoly mismatch;
    OverlapFailure(std::size_t i_, std::size_t j_, std::size_t k_, NCPoly m)
        : i(i_), j(j_), k(k_), mismatch(std::move(m)) {}
  };

  std::vector<DegreeCount> dimensions;
  std::vector<OverlapFailure> overlap_failures;
  bool overlaps_checked = false;  // false when the span engine was in use

  bool passed() const;
  std::string str() const;
};

// (a) For every generator triple k > j > i reduces e_k e_j e_i along both
//     initial rewrites and reports any disagreement of the final forms.
// (b) Reduces every symmetrized monomial of degree <= maxdeg and counts the
//     per-degree dimensions of their span against C(n + d - 1, d).
// Requires a concrete relation set.
PbwReport pbw_check(const RelationSet& rels, unsigned maxdeg);

}  // namespace liberator
