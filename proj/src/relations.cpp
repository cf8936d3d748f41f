#include "liberator/relations.hpp"

#include "liberator/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace liberator {

std::optional<unsigned> cap_of(const Truncation& t) {
  if (const auto* c = std::get_if<DegreeCap>(&t)) return c->cap;
  return std::nullopt;
}

RelationSet::RelationSet(GeneratorSet gens, Truncation trunc)
    : gens_(std::move(gens)), trunc_(trunc), zero_(gens_) {}

RelationSet& RelationSet::set_rhs(std::size_t i, std::size_t j, NCPoly f) {
  if (!(f.gens() == gens_)) throw std::invalid_argument("generator set mismatch");
  if (i >= j || j >= gens_.size()) {
    throw std::invalid_argument("relation pair must satisfy i < j < n");
  }
  if (const auto cap = cap_of(trunc_)) f = f.truncated(*cap);
  rhs_.insert_or_assign({i, j}, std::move(f));
  return *this;
}

const NCPoly& RelationSet::rhs(std::size_t i, std::size_t j) const {
  if (i >= j || j >= gens_.size()) {
    throw std::invalid_argument("relation pair must satisfy i < j < n");
  }
  const auto it = rhs_.find({i, j});
  return it != rhs_.end() ? it->second : zero_;
}

bool RelationSet::concrete() const {
  for (const auto& [pair, f] : rhs_) {
    if (!f.concrete()) return false;
  }
  return true;
}

NCPoly RelationSet::element(std::size_t i, std::size_t j) const {
  NCPoly r = NCPoly::word(gens_, {static_cast<unsigned>(i), static_cast<unsigned>(j)});
  r -= NCPoly::word(gens_, {static_cast<unsigned>(j), static_cast<unsigned>(i)});
  r -= rhs(i, j);
  return r;
}

RelationSet RelationSet::substituted(
    const std::map<std::string, ParamPoly>& a) const {
  RelationSet out(gens_, trunc_);
  for (const auto& [pair, f] : rhs_) {
    out.set_rhs(pair.first, pair.second, f.substituted(a));
  }
  return out;
}

RelationSet RelationSet::scaled(const Rational& c) const {
  RelationSet out(gens_, trunc_);
  for (const auto& [pair, f] : rhs_) {
    out.set_rhs(pair.first, pair.second, c * f);
  }
  return out;
}

namespace {

bool element_homogeneous_quadratic(const NCPoly& f) {
  for (const auto& [w, c] : f.terms()) {
    if (w.size() != 2) return false;
  }
  return true;
}

std::string word_str(const GeneratorSet& gens, const Word& w) {
  std::string s;
  for (const unsigned g : w) s += gens.names.at(g);
  return s;
}

}  // namespace

Reducer::Reducer(const RelationSet& rels)
    : rels_(rels), cap_(cap_of(rels.truncation())) {
  const GeneratorSet& gens = rels_.gens();
  const std::size_t n = gens.size();

  bool orientable = true;
  bool order_safe = true;
  std::string obstruction;
  bool span_ok = rels_.concrete();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const NCPoly& f = rels_.rhs(i, j);
      if (!element_homogeneous_quadratic(f)) span_ok = false;

      const Word descent{static_cast<unsigned>(j), static_cast<unsigned>(i)};
      const ParamPoly theta = f.coeff(descent);
      if (!theta.is_constant()) {
        orientable = false;
        obstruction = "parametric coefficient on " +
                      word_str(gens, descent) + " in its own relation";
        continue;
      }
      const Rational th = theta.constant_value();
      if (th == -1) {
        orientable = false;
        obstruction = "coefficient -1 on " + word_str(gens, descent) +
                      " leaves the relation non-orientable";
        continue;
      }
      NCPoly g = f;
      g.add_term(descent, -theta);
      NCPoly rule =
          NCPoly::word(gens, {static_cast<unsigned>(i), static_cast<unsigned>(j)});
      rule -= g;
      rule = ParamPoly(Rational(1) / (Rational(1) + th)) * rule;
      // Leftmost-descent rewriting terminates when every same-degree word in
      // a rule's right-hand side is graded-lex smaller than the descent it
      // replaces; otherwise rewriting can cycle (e.g. a Y^2 term feeding YX
      // back in), so prefer the span engine when it is available.
      for (const auto& [b, c] : rule.terms()) {
        if (b.size() == 2 && !WordOrder{}(b, descent)) order_safe = false;
      }
      rule_rhs_.insert_or_assign({i, j}, std::move(rule));
    }
  }

  span_allowed_ = span_ok;
  if (orientable && (order_safe || !span_allowed_)) {
    mode_ = Mode::Rewriting;
  } else if (span_allowed_) {
    mode_ = Mode::Span;
  } else {
    mode_ = Mode::Unavailable;
    unavailable_kind_ = ReductionError::Kind::NotOrientable;
    unavailable_reason_ =
        obstruction + "; span reduction needs concrete homogeneous "
        "degree-2 right-hand sides";
  }
}

NCPoly Reducer::reduce(const NCPoly& x) {
  if (!(x.gens() == rels_.gens())) {
    throw std::invalid_argument("generator set mismatch");
  }
  NCPoly input = cap_ ? x.truncated(*cap_) : x;
  switch (mode_) {
    case Mode::Rewriting:
      return reduce_rewriting(input);
    case Mode::Span:
      return reduce_span(input);
    case Mode::Unavailable:
      throw ReductionError(unavailable_kind_, unavailable_reason_);
  }
  throw std::logic_error("unreachable");
}

NCPoly Reducer::reduce_rewriting(const NCPoly& x) {
  NCPoly out(rels_.gens());
  for (const auto& [w, c] : x.terms()) {
    out += c * reduce_word(w);
  }
  return out;
}

NCPoly Reducer::rewrite_once(const Word& w, std::size_t pos) {
  if (mode_ != Mode::Rewriting) {
    throw ReductionError(ReductionError::Kind::Unsupported,
                         "single rewrites need the rewriting engine");
  }
  if (pos + 1 >= w.size() || w[pos] <= w[pos + 1]) {
    throw std::invalid_argument("no descent at the requested position");
  }
  const std::size_t i = w[pos + 1];
  const std::size_t j = w[pos];
  const NCPoly& rule = rule_rhs_.at({i, j});

  NCPoly out(rels_.gens());
  const Word prefix(w.begin(), w.begin() + pos);
  const Word suffix(w.begin() + pos + 2, w.end());
  for (const auto& [body, c] : rule.terms()) {
    if (!cap_ && body.size() > 2) {
      throw ReductionError(ReductionError::Kind::DegreeRaising,
                           "degree-raising relation requires DegreeCap");
    }
    Word nw = prefix;
    nw.insert(nw.end(), body.begin(), body.end());
    nw.insert(nw.end(), suffix.begin(), suffix.end());
    if (cap_ && nw.size() > *cap_) continue;
    out.add_term(nw, c);
  }
  return out;
}

NCPoly Reducer::reduce_word(const Word& w) {
  const GeneratorSet& gens = rels_.gens();
  if (cap_ && w.size() > *cap_) return NCPoly(gens);

  std::size_t pos = w.size();
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    if (w[k] > w[k + 1]) {
      pos = k;
      break;
    }
  }
  if (pos == w.size()) return NCPoly::word(gens, w);  // already sorted

  const auto hit = memo_.find(w);
  if (hit != memo_.end()) return hit->second;
  if (in_progress_.count(w)) {
    throw ReductionError(ReductionError::Kind::Cycle,
                         "rewriting revisits " + word_str(gens, w) +
                             " inside its own reduction");
  }
  in_progress_.insert(w);

  NCPoly out(gens);
  try {
    const NCPoly replaced = rewrite_once(w, pos);
    for (const auto& [nw, c] : replaced.terms()) {
      out += c * reduce_word(nw);
    }
  } catch (...) {
    in_progress_.erase(w);
    throw;
  }
  in_progress_.erase(w);
  memo_.emplace(w, out);
  return out;
}

const std::map<Word, NCPoly, WordOrder>& Reducer::span_rows(unsigned degree) {
  const auto hit = echelon_.find(degree);
  if (hit != echelon_.end()) return hit->second;

  const GeneratorSet& gens = rels_.gens();
  const std::size_t n = gens.size();
  auto& rows = echelon_[degree];
  if (degree < 2) return rows;

  // All words of each length, in graded-lex order.
  const auto words_of = [&](unsigned len) {
    std::vector<Word> out;
    Word w(len, 0);
    while (true) {
      out.push_back(w);
      std::size_t k = len;
      while (k > 0 && w[k - 1] + 1 == n) --k;
      if (k == 0) break;
      ++w[k - 1];
      for (std::size_t t = k; t < len; ++t) w[t] = 0;
    }
    return out;
  };

  std::vector<NCPoly> elements;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      elements.push_back(rels_.element(i, j));
    }
  }

  for (unsigned p = 0; p + 2 <= degree; ++p) {
    const unsigned q = degree - 2 - p;
    for (const Word& u : words_of(p)) {
      for (const Word& v : words_of(q)) {
        for (const NCPoly& el : elements) {
          NCPoly row = nc_mul(nc_mul(NCPoly::word(gens, u), el),
                              NCPoly::word(gens, v));
          // Reduce against the echelon collected so far.
          while (!row.is_zero()) {
            const auto& lead = row.terms().rbegin()->first;
            const auto found = rows.find(lead);
            if (found == rows.end()) break;
            NCPoly scaled = row.terms().rbegin()->second * found->second;
            row -= scaled;
          }
          if (row.is_zero()) continue;
          const Word lead = row.terms().rbegin()->first;
          const Rational lc = row.terms().rbegin()->second.constant_value();
          row = ParamPoly(Rational(1) / lc) * row;
          for (auto& [lw, existing] : rows) {
            const ParamPoly c = existing.coeff(lead);
            if (!c.is_zero()) existing -= c * row;
          }
          rows.emplace(lead, std::move(row));
        }
      }
    }
  }
  return rows;
}

NCPoly Reducer::reduce_span(const NCPoly& x) {
  const GeneratorSet& gens = rels_.gens();
  // Split into homogeneous components.
  std::map<unsigned, NCPoly> components;
  for (const auto& [w, c] : x.terms()) {
    auto [it, inserted] =
        components.emplace(static_cast<unsigned>(w.size()), NCPoly(gens));
    it->second.add_term(w, c);
  }

  NCPoly out(gens);
  for (auto& [degree, component] : components) {
    const auto& rows = span_rows(degree);
    NCPoly r = std::move(component);
    while (!r.is_zero()) {
      // Largest word with an echelon row, scanning from the top.
      bool reduced = false;
      for (auto it = r.terms().rbegin(); it != r.terms().rend(); ++it) {
        const auto found = rows.find(it->first);
        if (found != rows.end()) {
          r -= it->second * found->second;
          reduced = true;
          break;
        }
      }
      if (!reduced) break;
    }
    out += r;
  }
  return out;
}

NCPoly normal_form(const NCPoly& x, const RelationSet& rels) {
  Reducer red(rels);
  return red.reduce(x);
}

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t t = 1; t <= k; ++t) {
    r = r * (n - k + t) / t;
  }
  return r;
}

// All words of the given length over n letters, in graded-lex order.
std::vector<Word> all_words(std::size_t n, unsigned len) {
  std::vector<Word> out;
  Word w(len, 0);
  while (true) {
    out.push_back(w);
    std::size_t k = len;
    while (k > 0 && w[k - 1] + 1 == n) --k;
    if (k == 0) break;
    ++w[k - 1];
    for (std::size_t t = k; t < len; ++t) w[t] = 0;
  }
  return out;
}

}  // namespace

bool PbwReport::passed() const {
  if (!overlap_failures.empty()) return false;
  for (const auto& d : dimensions) {
    if (d.found != d.expected) return false;
  }
  return true;
}

std::string PbwReport::str() const {
  std::ostringstream os;
  os << (passed() ? "pbw ok" : "pbw FAILED");
  os << "; dims";
  for (const auto& d : dimensions) {
    os << " " << d.degree << ":" << d.found << "/" << d.expected;
  }
  if (overlaps_checked) {
    os << "; overlap failures: " << overlap_failures.size();
  } else {
    os << "; overlaps not applicable";
  }
  return os.str();
}

PbwReport pbw_check(const RelationSet& rels, unsigned maxdeg) {
  if (!rels.concrete()) {
    throw std::invalid_argument("pbw_check requires a concrete relation set");
  }
  const GeneratorSet& gens = rels.gens();
  const std::size_t n = gens.size();
  Reducer red(rels);
  PbwReport rep;

  if (red.uses_rewriting()) {
    rep.overlaps_checked = true;
    for (std::size_t k = 2; k < n; ++k) {
      for (std::size_t j = 1; j < k; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
          const Word w{static_cast<unsigned>(k), static_cast<unsigned>(j),
                       static_cast<unsigned>(i)};
          const NCPoly a = red.reduce(red.rewrite_once(w, 0));
          const NCPoly b = red.reduce(red.rewrite_once(w, 1));
          if (!(a == b)) {
            rep.overlap_failures.emplace_back(i, j, k, a - b);
          }
        }
      }
    }
  }

  if (red.uses_rewriting()) {
    // Diamond lemma: once the overlaps above resolve, the irreducible words
    // of each degree are a basis of the quotient's filtration quotients, so
    // count the words the engine leaves fixed.
    for (unsigned d = 0; d <= maxdeg; ++d) {
      std::size_t fixed = 0;
      for (const Word& word : all_words(n, d)) {
        const NCPoly w = NCPoly::word(gens, word);
        if (red.reduce(w) == w) ++fixed;
      }
      rep.dimensions.push_back({d, fixed, binomial(n + d - 1, d)});
    }
    return rep;
  }

  // The span engine is graded: the rank of the reduced degree-d words is the
  // exact dimension of the degree-d piece of the quotient.
  for (unsigned d = 0; d <= maxdeg; ++d) {
    RationalMatrix matrix;
    std::map<Word, std::size_t, WordOrder> columns;
    for (const Word& word : all_words(n, d)) {
      const NCPoly nf = red.reduce(NCPoly::word(gens, word));
      std::vector<Rational> rowvec(columns.size(), Rational(0));
      for (const auto& [w, c] : nf.terms()) {
        auto [it, inserted] = columns.emplace(w, columns.size());
        if (inserted) {
          for (auto& r : matrix) r.push_back(Rational(0));
          rowvec.push_back(Rational(0));
        }
        rowvec[it->second] = c.constant_value();
      }
      matrix.push_back(std::move(rowvec));
    }
    for (auto& r : matrix) r.resize(columns.size(), Rational(0));
    rep.dimensions.push_back({d, rank(matrix), binomial(n + d - 1, d)});
  }
  return rep;
}

}  // namespace liberator
