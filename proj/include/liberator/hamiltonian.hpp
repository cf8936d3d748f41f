#pragma once

#include "liberator/dynamics.hpp"

#include <string>
#include <vector>

namespace liberator {

// Normal form of [h, x] in the quotient algebra.
NCPoly adjoint_action(const NCPoly& h, const NCPoly& x, const RelationSet& rels);

struct HamiltonReport {
  bool hamiltonian = false;
  unsigned maxdeg = 0;      // search bound; NotHamiltonianUpToDegree(maxdeg)
  NCPoly h;                 // particular solution (free coefficients at 0)
  std::vector<NCPoly> kernel;  // central elements: basis of { z : [z, e_i] = 0 }
  HamiltonReport() : h(NCPoly(GeneratorSet{})) {}
};

// Searches for h = sum over multidegrees |m| <= maxdeg of u_m * sym(m) with
// normal_form([h, e_i]) = normal_form(f_i) for every generator. The system
// is linear in the u_m; the report carries the canonical particular solution
// and the kernel of the adjoint map (which always contains 1).
// Requires a concrete relation set preserved by the dynamics.
HamiltonReport solve_hamiltonian(const Dynamics& dyn, const RelationSet& rels,
                                 unsigned maxdeg);

}  // namespace liberator
