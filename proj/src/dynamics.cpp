#include "liberator/dynamics.hpp"

#include <stdexcept>

namespace liberator {

Dynamics make_dynamics(GeneratorSet gens, std::vector<NCPoly> rhs) {
  if (rhs.size() != gens.size()) {
    throw std::invalid_argument("one right-hand side required per generator");
  }
  for (const NCPoly& f : rhs) {
    if (!(f.gens() == gens)) {
      throw std::invalid_argument("generator set mismatch");
    }
    if (!f.concrete()) {
      throw std::invalid_argument("dynamics right-hand sides must be concrete");
    }
  }
  return Dynamics{std::move(gens), std::move(rhs)};
}

std::optional<std::vector<Rational>> diagonal_coefficients(const Dynamics& dyn) {
  std::vector<Rational> diag;
  for (std::size_t i = 0; i < dyn.gens.size(); ++i) {
    const NCPoly& f = dyn.rhs[i];
    if (f.is_zero()) {
      diag.emplace_back(0);
      continue;
    }
    if (f.terms().size() != 1) return std::nullopt;
    const auto& [w, c] = *f.terms().begin();
    if (w != Word{static_cast<unsigned>(i)}) return std::nullopt;
    diag.push_back(c.constant_value());
  }
  return diag;
}

NCPoly derive_with(const GeneratorSet& gens, const std::vector<NCPoly>& rhs,
                   const NCPoly& x) {
  if (rhs.size() != gens.size()) {
    throw std::invalid_argument("one right-hand side required per generator");
  }
  NCPoly out(gens);
  for (const auto& [w, c] : x.terms()) {
    for (std::size_t p = 0; p < w.size(); ++p) {
      const NCPoly& replacement = rhs[w[p]];
      if (replacement.is_zero()) continue;
      const Word prefix(w.begin(), w.begin() + p);
      const Word suffix(w.begin() + p + 1, w.end());
      for (const auto& [b, cb] : replacement.terms()) {
        Word nw = prefix;
        nw.insert(nw.end(), b.begin(), b.end());
        nw.insert(nw.end(), suffix.begin(), suffix.end());
        out.add_term(nw, c * cb);
      }
    }
  }
  return out;
}

NCPoly derive(const Dynamics& dyn, const NCPoly& x) {
  if (!(x.gens() == dyn.gens)) {
    throw std::invalid_argument("generator set mismatch");
  }
  return derive_with(dyn.gens, dyn.rhs, x);
}

FlowSeries flow_series(const Dynamics& dyn, unsigned order) {
  if (order < 1) throw std::invalid_argument("flow order must be >= 1");
  FlowSeries series;
  series.order = order;
  series.derivatives.resize(dyn.gens.size());
  for (std::size_t i = 0; i < dyn.gens.size(); ++i) {
    NCPoly cur = NCPoly::generator(dyn.gens, i);
    series.derivatives[i].push_back(cur);
    for (unsigned k = 1; k <= order; ++k) {
      cur = derive(dyn, cur);
      series.derivatives[i].push_back(cur);
    }
  }
  return series;
}

NCPoly preservation_residual(const Dynamics& dyn, const RelationSet& rels,
                             std::size_t i, std::size_t j) {
  if (!(rels.gens() == dyn.gens)) {
    throw std::invalid_argument("generator set mismatch");
  }
  const NCPoly ei = NCPoly::generator(dyn.gens, i);
  const NCPoly ej = NCPoly::generator(dyn.gens, j);
  // d/dt (e_i e_j - e_j e_i - f_ij) along the flow.
  NCPoly unreduced = commutator(dyn.rhs[i], ej) + commutator(ei, dyn.rhs[j]) -
                     derive(dyn, rels.rhs(i, j));
  return normal_form(unreduced, rels);
}

FlowCheck flow_preserves(const Dynamics& dyn, const RelationSet& rels,
                         unsigned order) {
  if (!rels.concrete()) {
    throw std::invalid_argument("flow_preserves requires a concrete relation set");
  }
  if (!(rels.gens() == dyn.gens)) {
    throw std::invalid_argument("generator set mismatch");
  }
  const auto cap = cap_of(rels.truncation());
  Reducer red(rels);
  FlowCheck check;
  check.witness = NCPoly(dyn.gens);
  Rational factorial(1);
  for (std::size_t i = 0; i + 1 < dyn.gens.size(); ++i) {
    for (std::size_t j = i + 1; j < dyn.gens.size(); ++j) {
      NCPoly cur = rels.element(i, j);
      factorial = 1;
      for (unsigned k = 0; k <= order; ++k) {
        if (k > 0) {
          cur = derive(dyn, cur);
          if (cap) cur = cur.truncated(*cap);
          factorial *= k;
        }
        const NCPoly reduced = red.reduce(cur);
        if (!reduced.is_zero()) {
          check.preserved = false;
          check.failed_order = k;
          check.failed_pair = {i, j};
          check.witness = Rational(1) / factorial * reduced;
          return check;
        }
      }
    }
  }
  return check;
}

}  // namespace liberator
