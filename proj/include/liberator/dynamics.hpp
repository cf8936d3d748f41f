#pragma once

#include "liberator/relations.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace liberator {

// Polynomial operator ODE system d e_i / dt = f_i in the free algebra.
// Right-hand sides are concrete (rational coefficients).
struct Dynamics {
  GeneratorSet gens;
  std::vector<NCPoly> rhs;  // one per generator
};

// Validates generator/rhs consistency and concreteness.
Dynamics make_dynamics(GeneratorSet gens, std::vector<NCPoly> rhs);

// If every f_i = lambda_i * e_i, returns the diagonal coefficients.
std::optional<std::vector<Rational>> diagonal_coefficients(const Dynamics& dyn);

// The derivation D with D(e_i) = f_i extended by the Leibniz rule; acts on
// free elements and performs no reduction. `rhs` may be parametric here;
// the Dynamics overload applies the validated system.
NCPoly derive_with(const GeneratorSet& gens, const std::vector<NCPoly>& rhs,
                   const NCPoly& x);
NCPoly derive(const Dynamics& dyn, const NCPoly& x);

// Iterated derivatives D^k(e_i) for k = 0..order.
struct FlowSeries {
  unsigned order = 0;
  // derivatives[i][k] = D^k(e_i), unreduced free elements.
  std::vector<std::vector<NCPoly>> derivatives;
};
FlowSeries flow_series(const Dynamics& dyn, unsigned order);

// Normal form of D(e_i e_j - e_j e_i - f_ij) for one pair, i.e. the first
// obstruction to the flow preserving the relation. The relation set may be
// parametric as long as its normal forms are computable.
NCPoly preservation_residual(const Dynamics& dyn, const RelationSet& rels,
                             std::size_t i, std::size_t j);

// Order-by-order check that the flow maps the relation ideal into itself:
// for every pair and every k <= order, the t^k coefficient of the flow
// applied to the relation element, namely D^k(element)/k!, must reduce to 0.
struct FlowCheck {
  bool preserved = true;
  unsigned failed_order = 0;
  std::pair<std::size_t, std::size_t> failed_pair{0, 0};
  NCPoly witness;  // first nonzero reduced coefficient
  FlowCheck() : witness(NCPoly(GeneratorSet{})) {}
};
FlowCheck flow_preserves(const Dynamics& dyn, const RelationSet& rels,
                         unsigned order);

}  // namespace liberator
