// Randomized invariant suites shared by the property tests and the
// acceptance run: normal-form idempotence and multiplicativity, the
// Leibniz rule, the flow automorphism property, and PBW dimension counts.
#pragma once

#include "liberator/dynamics.hpp"
#include "liberator/relations.hpp"

#include <cstddef>
#include <random>
#include <vector>

namespace propsuite {

using liberator::Dynamics;
using liberator::GeneratorSet;
using liberator::NCPoly;
using liberator::Rational;
using liberator::Reducer;
using liberator::RelationSet;
using liberator::Word;

using Rng = std::mt19937;

struct SuiteStats {
  std::size_t checked = 0;  // instances that ran to a verdict
  std::size_t failed = 0;   // instances whose invariant did not hold
  std::size_t skipped = 0;  // instances outside an engine's scope
};

inline int random_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Rational random_rational(Rng& rng, int max_num, int max_den) {
  int num = random_int(rng, -max_num, max_num);
  const int den = random_int(rng, 1, max_den);
  return Rational(num, den);
}

inline Rational random_nonzero_rational(Rng& rng, int max_num, int max_den) {
  Rational r;
  do {
    r = random_rational(rng, max_num, max_den);
  } while (r == 0);
  return r;
}

inline GeneratorSet generators(std::size_t n) {
  const std::vector<std::string> names = {"X", "Y", "Z"};
  return GeneratorSet{{names.begin(), names.begin() + n}};
}

// Random free element: up to max_terms words of degree <= maxdeg with
// nonzero coefficients bounded by coeff_bound.
inline NCPoly random_poly(Rng& rng, const GeneratorSet& g, unsigned maxdeg,
                          unsigned max_terms, int coeff_bound) {
  NCPoly p(g);
  const int terms = random_int(rng, 1, static_cast<int>(max_terms));
  for (int t = 0; t < terms; ++t) {
    const int len = random_int(rng, 0, static_cast<int>(maxdeg));
    Word w;
    for (int k = 0; k < len; ++k) {
      w.push_back(static_cast<unsigned>(
          random_int(rng, 0, static_cast<int>(g.size()) - 1)));
    }
    int c = 0;
    while (c == 0) c = random_int(rng, -coeff_bound, coeff_bound);
    p.add_term(w, liberator::ParamPoly(Rational(c)));
  }
  return p;
}

// Random relation set whose pair bodies are combinations of sorted words of
// degree <= 2, so every pair is orientable (theta = 0) and no rewrite
// raises degree. Mixed with structured families by the callers.
inline RelationSet random_sorted_relations(Rng& rng, const GeneratorSet& g) {
  RelationSet rels(g, liberator::Unbounded{});
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (random_int(rng, 0, 4) == 0) continue;  // keep some pairs commuting
      NCPoly body(g);
      const int terms = random_int(rng, 1, 2);
      for (int t = 0; t < terms; ++t) {
        const int len = random_int(rng, 0, 2);
        std::vector<unsigned> letters;
        for (int k = 0; k < len; ++k) {
          letters.push_back(static_cast<unsigned>(
              random_int(rng, 0, static_cast<int>(g.size()) - 1)));
        }
        Word w = liberator::sorted_word([&] {
          std::vector<unsigned> multi(g.size(), 0);
          for (unsigned idx : letters) ++multi[idx];
          return multi;
        }());
        int c = 0;
        while (c == 0) c = random_int(rng, -2, 2);
        body.add_term(w, liberator::ParamPoly(Rational(c)));
      }
      rels.set_rhs(i, j, body);
    }
  }
  return rels;
}

// Structured relation families with a random parameter; always reducible.
inline RelationSet structured_relations(Rng& rng, int which) {
  using liberator::Unbounded;
  switch (which % 3) {
    case 0: {  // canonical commutation [X,Y] = c
      const GeneratorSet g = generators(2);
      RelationSet rels(g, Unbounded{});
      rels.set_rhs(0, 1, NCPoly::scalar(g, random_rational(rng, 9, 4)));
      return rels;
    }
    case 1: {  // quantum plane XY = q YX, i.e. [X,Y] = (q - 1) YX
      const GeneratorSet g = generators(2);
      RelationSet rels(g, Unbounded{});
      const Rational q = random_nonzero_rational(rng, 9, 4);
      rels.set_rhs(0, 1, (q - 1) * NCPoly::word(g, {1, 0}));
      return rels;
    }
    default: {  // Heisenberg [X,Y] = c Z
      const GeneratorSet g = generators(3);
      RelationSet rels(g, Unbounded{});
      rels.set_rhs(0, 1,
                   random_nonzero_rational(rng, 9, 4) *
                       NCPoly::generator(g, 2));
      return rels;
    }
  }
}

// NF(NF(x)) == NF(x) over random relation sets and inputs.
inline SuiteStats nf_idempotence(Rng& rng, std::size_t iterations) {
  SuiteStats stats;
  std::size_t attempts = 0;
  while (stats.checked < iterations && attempts < 3 * iterations) {
    ++attempts;
    const bool structured = random_int(rng, 0, 1) == 0;
    const RelationSet rels =
        structured ? structured_relations(rng, random_int(rng, 0, 2))
                   : random_sorted_relations(
                         rng, generators(random_int(rng, 2, 3)));
    const NCPoly p = random_poly(rng, rels.gens(), 4, 6, 3);
    try {
      Reducer red(rels);
      const NCPoly once = red.reduce(p);
      if (red.reduce(once) != once) ++stats.failed;
      ++stats.checked;
    } catch (const liberator::ReductionError&) {
      ++stats.skipped;
    }
  }
  return stats;
}

// NF(x * y) == NF(NF(x) * NF(y)) over random relation sets and inputs.
// Random bodies stay on two generators: a single oriented rule has no
// overlaps, so its normal forms are canonical on residue classes; the
// structured three-generator family (Heisenberg) satisfies Jacobi.
inline SuiteStats nf_multiplicativity(Rng& rng, std::size_t iterations) {
  SuiteStats stats;
  std::size_t attempts = 0;
  while (stats.checked < iterations && attempts < 3 * iterations) {
    ++attempts;
    const bool structured = random_int(rng, 0, 1) == 0;
    const RelationSet rels =
        structured ? structured_relations(rng, random_int(rng, 0, 2))
                   : random_sorted_relations(rng, generators(2));
    const NCPoly p = random_poly(rng, rels.gens(), 2, 4, 3);
    const NCPoly q = random_poly(rng, rels.gens(), 2, 4, 3);
    try {
      Reducer red(rels);
      if (red.reduce(p * q) != red.reduce(red.reduce(p) * red.reduce(q))) {
        ++stats.failed;
      }
      ++stats.checked;
    } catch (const liberator::ReductionError&) {
      ++stats.skipped;
    }
  }
  return stats;
}

// derive(x * y) == derive(x) * y + x * derive(y) in the free algebra.
inline SuiteStats leibniz(Rng& rng, std::size_t iterations) {
  SuiteStats stats;
  for (std::size_t it = 0; it < iterations; ++it) {
    const GeneratorSet g = generators(random_int(rng, 2, 3));
    std::vector<NCPoly> rhs;
    for (std::size_t i = 0; i < g.size(); ++i) {
      rhs.push_back(random_poly(rng, g, 2, 3, 3));
    }
    const NCPoly p = random_poly(rng, g, 2, 4, 3);
    const NCPoly q = random_poly(rng, g, 2, 4, 3);
    const NCPoly lhs = liberator::derive_with(g, rhs, p * q);
    const NCPoly rhs_sum = liberator::derive_with(g, rhs, p) * q +
                           p * liberator::derive_with(g, rhs, q);
    if (lhs != rhs_sum) ++stats.failed;
    ++stats.checked;
  }
  return stats;
}

// Preserved pairs (dynamics, relations) for the automorphism suite.
inline std::vector<std::pair<Dynamics, RelationSet>> preserved_pool() {
  using liberator::make_dynamics;
  using liberator::Unbounded;
  std::vector<std::pair<Dynamics, RelationSet>> pool;

  const GeneratorSet g2 = generators(2);
  const NCPoly x = NCPoly::generator(g2, 0);
  const NCPoly y = NCPoly::generator(g2, 1);
  const Dynamics wigner = make_dynamics(g2, {x, -y});

  RelationSet ccr(g2, Unbounded{});
  ccr.set_rhs(0, 1, NCPoly::scalar(g2, 1));
  pool.emplace_back(wigner, ccr);

  RelationSet qcr(g2, Unbounded{});
  qcr.set_rhs(0, 1, NCPoly::scalar(g2, Rational(3, 2)) -
                        Rational(1, 2) * (x * y));
  pool.emplace_back(wigner, qcr);

  RelationSet qplane(g2, Unbounded{});
  qplane.set_rhs(0, 1, x * y);
  pool.emplace_back(make_dynamics(g2, {x, Rational(2) * y}), qplane);

  RelationSet jordan(g2, Unbounded{});
  jordan.set_rhs(0, 1, y * y);
  pool.emplace_back(make_dynamics(g2, {x + y, y}), jordan);

  const GeneratorSet g3 = generators(3);
  RelationSet heis(g3, Unbounded{});
  heis.set_rhs(0, 1, NCPoly::generator(g3, 2));
  pool.emplace_back(
      make_dynamics(g3, {NCPoly::generator(g3, 0),
                         Rational(-1) * NCPoly::generator(g3, 1),
                         NCPoly(g3)}),
      heis);
  return pool;
}

// Automorphism property of the flow on the quotient, to the given order:
// with s_k(z) = D^k(z) / k! and normal-form representatives u = NF(p),
// v = NF(q), w = NF(p q), every t^k coefficient of gamma_t(u) gamma_t(v)
// - gamma_t(w) must reduce to zero. Scaled by k! the check reads
// NF( sum_a C(k,a) D^a(u) D^(k-a)(v) - D^k(w) ) == 0.
inline SuiteStats flow_automorphism(Rng& rng, std::size_t iterations,
                                    unsigned order) {
  SuiteStats stats;
  const auto pool = preserved_pool();
  // binomial table up to the order
  std::vector<std::vector<Rational>> choose(order + 1);
  for (unsigned n = 0; n <= order; ++n) {
    choose[n].assign(n + 1, Rational(1));
    for (unsigned k = 1; k < n; ++k) {
      choose[n][k] = choose[n - 1][k - 1] + choose[n - 1][k];
    }
  }

  for (std::size_t it = 0; it < iterations; ++it) {
    const auto& [dyn, rels] =
        pool[static_cast<std::size_t>(random_int(
            rng, 0, static_cast<int>(pool.size()) - 1))];
    Reducer red(rels);
    const NCPoly p = random_poly(rng, dyn.gens, 2, 3, 2);
    const NCPoly q = random_poly(rng, dyn.gens, 2, 3, 2);
    const NCPoly u = red.reduce(p);
    const NCPoly v = red.reduce(q);
    const NCPoly w = red.reduce(p * q);

    std::vector<NCPoly> du{u}, dv{v}, dw{w};
    for (unsigned k = 1; k <= order; ++k) {
      du.push_back(derive(dyn, du.back()));
      dv.push_back(derive(dyn, dv.back()));
      dw.push_back(derive(dyn, dw.back()));
    }

    bool ok = true;
    for (unsigned k = 0; k <= order && ok; ++k) {
      NCPoly sum(dyn.gens);
      for (unsigned a = 0; a <= k; ++a) {
        sum += choose[k][a] * (du[a] * dv[k - a]);
      }
      sum -= dw[k];
      if (!red.reduce(sum).is_zero()) ok = false;
    }
    if (!ok) ++stats.failed;
    ++stats.checked;
  }
  return stats;
}

// Per-degree PBW dimensions C(n + d - 1, d) for structured families with
// random parameters.
inline SuiteStats pbw_dimensions(Rng& rng, std::size_t iterations,
                                 unsigned maxdeg) {
  SuiteStats stats;
  for (std::size_t it = 0; it < iterations; ++it) {
    const RelationSet rels =
        structured_relations(rng, static_cast<int>(it % 3));
    const liberator::PbwReport pbw = liberator::pbw_check(rels, maxdeg);
    bool ok = pbw.passed();
    for (const auto& d : pbw.dimensions) {
      if (d.found != d.expected) ok = false;
    }
    if (!ok) ++stats.failed;
    ++stats.checked;
  }
  return stats;
}

}  // namespace propsuite
