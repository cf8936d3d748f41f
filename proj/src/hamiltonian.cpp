#include "liberator/hamiltonian.hpp"

#include "liberator/linalg.hpp"

#include <functional>
#include <map>

namespace liberator {

NCPoly adjoint_action(const NCPoly& h, const NCPoly& x, const RelationSet& rels) {
  return normal_form(commutator(h, x), rels);
}

namespace {

std::vector<std::vector<unsigned>> multidegrees_up_to(std::size_t n,
                                                      unsigned maxdeg) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> stack;
  for (unsigned d = 0; d <= maxdeg; ++d) {
    const std::function<void(std::size_t, unsigned)> rec =
        [&](std::size_t pos, unsigned rest) {
          if (pos + 1 == n) {
            stack.push_back(rest);
            out.push_back(stack);
            stack.pop_back();
            return;
          }
          for (unsigned v = 0; v <= rest; ++v) {
            stack.push_back(v);
            rec(pos + 1, rest - v);
            stack.pop_back();
          }
        };
    rec(0, d);
  }
  return out;
}

}  // namespace

HamiltonReport solve_hamiltonian(const Dynamics& dyn, const RelationSet& rels,
                                 unsigned maxdeg) {
  if (!rels.concrete()) {
    throw std::invalid_argument(
        "solve_hamiltonian requires a concrete relation set");
  }
  const std::size_t n = dyn.gens.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!preservation_residual(dyn, rels, i, j).is_zero()) {
        throw std::invalid_argument(
            "relation set is not preserved by the dynamics");
      }
    }
  }

  const GeneratorSet& gens = dyn.gens;
  const auto degrees = multidegrees_up_to(n, maxdeg);

  // h = sum u_m * sym(m); the adjoint conditions are linear in the u_m.
  NCPoly h_param(gens);
  std::vector<std::string> names;
  for (const auto& m : degrees) {
    std::string name = "h";
    for (const unsigned e : m) name += "_" + std::to_string(e);
    names.push_back(name);
    h_param += ParamPoly::unknown(name) * weyl_symmetrize(gens, m);
  }

  Reducer red(rels);
  RationalMatrix a;
  std::vector<Rational> b;
  std::map<std::string, std::size_t> column;
  for (std::size_t k = 0; k < names.size(); ++k) column[names[k]] = k;

  for (std::size_t i = 0; i < n; ++i) {
    const NCPoly condition =
        red.reduce(commutator(h_param, NCPoly::generator(gens, i)) - dyn.rhs[i]);
    for (const auto& [w, c] : condition.terms()) {
      std::vector<Rational> row(names.size(), Rational(0));
      Rational constant(0);
      for (const auto& [mono, coeff] : c.terms()) {
        if (mono.empty()) {
          constant = coeff;
        } else {
          row[column.at(mono[0].first)] = coeff;
        }
      }
      a.push_back(std::move(row));
      b.push_back(-constant);
    }
  }

  const LinearSolution sol = solve_affine(a, b, names.size());
  HamiltonReport rep;
  rep.maxdeg = maxdeg;
  rep.h = NCPoly(gens);
  if (!sol.consistent) {
    rep.hamiltonian = false;
    return rep;
  }
  rep.hamiltonian = true;
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    if (sol.particular[k] != 0) {
      rep.h += sol.particular[k] * weyl_symmetrize(gens, degrees[k]);
    }
  }
  for (const auto& v : sol.kernel) {
    NCPoly z(gens);
    for (std::size_t k = 0; k < degrees.size(); ++k) {
      if (v[k] != 0) z += v[k] * weyl_symmetrize(gens, degrees[k]);
    }
    rep.kernel.push_back(std::move(z));
  }
  return rep;
}

}  // namespace liberator
