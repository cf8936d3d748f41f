#include "liberator/liberation.hpp"

#include "liberator/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <sstream>

namespace liberator {

std::set<std::pair<unsigned, unsigned>> resonance_monomials(
    const Rational& lambda, const Rational& mu, unsigned maxdeg) {
  std::set<std::pair<unsigned, unsigned>> out;
  for (unsigned i = 0; i <= maxdeg; ++i) {
    for (unsigned j = 0; i + j <= maxdeg; ++j) {
      const Rational r = lambda * (static_cast<int>(i) - 1) +
                         mu * (static_cast<int>(j) - 1);
      if (r == 0) out.emplace(i, j);
    }
  }
  return out;
}

std::set<std::pair<unsigned, unsigned>> resonance_monomials_generic(
    unsigned maxdeg) {
  std::set<std::pair<unsigned, unsigned>> out;
  if (maxdeg >= 2) out.emplace(1, 1);
  return out;
}

namespace {

std::optional<Integer> exact_sqrt(const Integer& n) {
  if (n < 0) return std::nullopt;
  const Integer r = boost::multiprecision::sqrt(n);
  if (r * r == n) return r;
  return std::nullopt;
}

std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  const auto num = exact_sqrt(numerator(r));
  const auto den = exact_sqrt(denominator(r));
  if (num && den) return Rational(*num, *den);
  return std::nullopt;
}

}  // namespace

std::string CaseLabel::name() const {
  switch (kind) {
    case CaseKind::QuantumPlane: return "QuantumPlane";
    case CaseKind::Quadratic: return "Quadratic";
    case CaseKind::PolyTimesY: return "PolyTimesY";
    case CaseKind::WignerDiagonal: return "WignerDiagonal";
    case CaseKind::MixedPowers: return "MixedPowers";
    case CaseKind::JordanBlock: return "JordanBlock";
    case CaseKind::ZeroDynamics: return "ZeroDynamics";
  }
  return "?";
}

CaseLabel classify_2x2(const std::array<std::array<Rational, 2>, 2>& a,
                       bool transpose) {
  auto m = a;
  if (transpose) std::swap(m[0][1], m[1][0]);

  CaseLabel label;
  if (m[0][0] == 0 && m[0][1] == 0 && m[1][0] == 0 && m[1][1] == 0) {
    label.kind = CaseKind::ZeroDynamics;
    return label;
  }
  const Rational tr = m[0][0] + m[1][1];
  const Rational det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const Rational disc = tr * tr - 4 * det;
  const auto root = rational_sqrt(disc);
  if (!root) {
    throw std::invalid_argument(
        "irrational or complex eigenvalues unsupported; use --generic-ratio "
        "mode");
  }
  label.lambda = (tr + *root) / 2;
  label.mu = (tr - *root) / 2;

  if (label.lambda == label.mu) {
    const bool scalar_matrix =
        m[0][1] == 0 && m[1][0] == 0 && m[0][0] == m[1][1];
    label.kind = scalar_matrix ? CaseKind::Quadratic : CaseKind::JordanBlock;
    return label;
  }
  if (label.lambda == 0 || label.mu == 0) {
    label.kind = CaseKind::PolyTimesY;
  } else if (label.lambda == -label.mu) {
    label.kind = CaseKind::WignerDiagonal;
  } else if (label.lambda * label.mu > 0) {
    label.kind = CaseKind::QuantumPlane;
  } else {
    label.kind = CaseKind::MixedPowers;
  }
  return label;
}

namespace {

bool homogeneous_of_degree(const NCPoly& f, unsigned d) {
  for (const auto& [w, c] : f.terms()) {
    if (w.size() != d) return false;
  }
  return true;
}

bool homogeneous_quadratic_dynamics(const Dynamics& dyn) {
  bool nonzero = false;
  for (const NCPoly& f : dyn.rhs) {
    if (!homogeneous_of_degree(f, 2)) return false;
    if (!f.is_zero()) nonzero = true;
  }
  return nonzero;
}

std::string multidegree_name(std::size_t n_pairs, std::size_t i, std::size_t j,
                             const std::vector<unsigned>& m) {
  std::string name = n_pairs > 1 ? "c" + std::to_string(i) + std::to_string(j)
                                 : "a";
  for (const unsigned e : m) name += "_" + std::to_string(e);
  return name;
}

std::vector<std::vector<unsigned>> multidegrees_up_to(std::size_t n,
                                                      unsigned maxdeg) {
  // Ascending graded-lex order.
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur(n, 0);
  for (unsigned d = 0; d <= maxdeg; ++d) {
    // Enumerate compositions of d into n parts, most weight on the last
    // generator first; then sort per degree for a canonical order.
    std::vector<std::vector<unsigned>> level;
    std::vector<unsigned> stack;
    const std::function<void(std::size_t, unsigned)> rec =
        [&](std::size_t pos, unsigned rest) {
          if (pos + 1 == n) {
            stack.push_back(rest);
            level.push_back(stack);
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
    for (auto& m : level) out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

AnsatzSpec make_ansatz(const Dynamics& dyn, AnsatzMode mode, unsigned maxdeg) {
  const std::size_t n = dyn.gens.size();
  AnsatzSpec spec;

  const auto require_two = [&](const char* what) {
    if (n != 2) {
      throw std::invalid_argument(std::string(what) +
                                  " ansatz is defined for two generators");
    }
  };

  switch (mode) {
    case AnsatzMode::Linear: {
      require_two("linear");
      spec.entries[{0, 1}] = {{{1, 0}, "alpha"}, {{0, 1}, "beta"}};
      spec.symmetric = false;
      break;
    }
    case AnsatzMode::Quadratic: {
      require_two("quadratic");
      spec.entries[{0, 1}] = {
          {{2, 0}, "alpha"}, {{1, 1}, "beta"}, {{0, 2}, "gamma"}};
      // The symmetrized binding feeds the ideal-membership equations, which
      // only apply in the homogeneous quadratic sector; otherwise unknowns
      // bind to sorted words (projectively the same coordinates).
      spec.symmetric = homogeneous_quadratic_dynamics(dyn);
      break;
    }
    case AnsatzMode::Resonance: {
      require_two("resonance");
      const auto diag = diagonal_coefficients(dyn);
      if (!diag) {
        throw std::invalid_argument(
            "resonance ansatz requires diagonal dynamics");
      }
      for (const auto& [i, j] : resonance_monomials((*diag)[0], (*diag)[1],
                                                    maxdeg)) {
        spec.entries[{0, 1}].push_back(
            {{i, j}, multidegree_name(1, 0, 1, {i, j})});
      }
      spec.symmetric = false;
      break;
    }
    case AnsatzMode::Full: {
      for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          for (const auto& m : multidegrees_up_to(n, maxdeg)) {
            spec.entries[{i, j}].push_back(
                {m, multidegree_name(n * (n - 1) / 2, i, j, m)});
          }
        }
      }
      spec.symmetric = false;
      break;
    }
  }
  return spec;
}

namespace {

// The parametric relation set of an ansatz: each unknown multiplies either
// its sorted word or its symmetrized monomial.
RelationSet ansatz_relations(const GeneratorSet& gens, const AnsatzSpec& spec,
                             const Truncation& trunc) {
  RelationSet rels(gens, trunc);
  for (const auto& [pair, entries] : spec.entries) {
    NCPoly f(gens);
    for (const auto& entry : entries) {
      const NCPoly base = spec.symmetric
                              ? weyl_symmetrize(gens, entry.multidegree)
                              : NCPoly::word(gens, sorted_word(entry.multidegree));
      f += ParamPoly::unknown(entry.unknown) * base;
    }
    rels.set_rhs(pair.first, pair.second, f);
  }
  return rels;
}

std::vector<std::string> ansatz_unknowns(const AnsatzSpec& spec) {
  std::vector<std::string> names;
  for (const auto& [pair, entries] : spec.entries) {
    for (const auto& entry : entries) names.push_back(entry.unknown);
  }
  return names;
}

}  // namespace

EquationSystem build_system(const Dynamics& dyn, const AnsatzSpec& ansatz,
                            const Truncation& trunc) {
  EquationSystem sys;
  sys.ansatz = ansatz;
  sys.truncation = trunc;
  sys.unknowns = ansatz_unknowns(ansatz);
  const GeneratorSet& gens = dyn.gens;
  const std::size_t n = gens.size();

  if (!ansatz.symmetric) {
    const RelationSet rels = ansatz_relations(gens, ansatz, trunc);
    Reducer red(rels);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const NCPoly ei = NCPoly::generator(gens, i);
        const NCPoly ej = NCPoly::generator(gens, j);
        NCPoly unreduced = commutator(dyn.rhs[i], ej) +
                           commutator(ei, dyn.rhs[j]) -
                           derive(dyn, rels.rhs(i, j));
        const NCPoly residual = red.reduce(unreduced);
        for (const auto& [w, c] : residual.terms()) {
          sys.equations.push_back(c);
        }
      }
    }
    return sys;
  }

  // Symmetrized binding: ideal-membership equations. Exact in the
  // homogeneous quadratic sector, where the degree-3 slice of the two-sided
  // ideal of R is spanned by X R, Y R, R X, R Y.
  if (n != 2 || !homogeneous_quadratic_dynamics(dyn)) {
    throw std::invalid_argument(
        "symmetrized ansatz equations require two generators and homogeneous "
        "quadratic dynamics");
  }
  for (const auto& [pair, entries] : ansatz.entries) {
    for (const auto& entry : entries) {
      if (std::accumulate(entry.multidegree.begin(), entry.multidegree.end(),
                          0u) != 2) {
        throw std::invalid_argument(
            "symmetrized ansatz must be homogeneous quadratic");
      }
    }
  }

  const RelationSet rels = ansatz_relations(gens, ansatz, trunc);
  const NCPoly r = rels.element(0, 1);
  const NCPoly dr = derive_with(gens, dyn.rhs, r);

  const NCPoly x = NCPoly::generator(gens, 0);
  const NCPoly y = NCPoly::generator(gens, 1);
  const std::array<NCPoly, 4> slice = {nc_mul(x, r), nc_mul(y, r),
                                       nc_mul(r, x), nc_mul(r, y)};
  NCPoly membership = dr;
  for (std::size_t k = 0; k < slice.size(); ++k) {
    const std::string name = "_u" + std::to_string(k);
    sys.auxiliary.push_back(name);
    membership -= ParamPoly::unknown(name) * slice[k];
  }
  for (const auto& [w, c] : membership.terms()) {
    sys.equations.push_back(c);
  }
  return sys;
}

namespace {

// Fully substitutes `resolved` bindings into an expression until only free
// unknowns remain (bindings may reference other bound names transiently).
ParamPoly chase(const ParamPoly& p,
                const std::map<std::string, ParamPoly>& resolved) {
  ParamPoly cur = p;
  for (int guard = 0; guard < 64; ++guard) {
    bool touches = false;
    for (const std::string& u : cur.unknowns()) {
      if (resolved.count(u)) {
        touches = true;
        break;
      }
    }
    if (!touches) return cur;
    cur = cur.substitute(resolved);
  }
  throw std::logic_error("circular elimination chain");
}

}  // namespace

SolveReport solve_system(const EquationSystem& sys) {
  SolveReport rep;
  rep.unknowns = sys.unknowns;

  std::vector<std::string> order = sys.auxiliary;  // eliminate helpers first
  order.insert(order.end(), sys.unknowns.begin(), sys.unknowns.end());

  std::vector<ParamPoly> work;
  for (const ParamPoly& eq : sys.equations) {
    if (!eq.is_zero()) work.push_back(eq);
  }
  std::map<std::string, ParamPoly> resolved;
  bool inconsistent = false;

  const auto apply_binding = [&](const std::string& name, const ParamPoly& value) {
    std::map<std::string, ParamPoly> one{{name, value}};
    for (auto& [k, v] : resolved) v = v.substitute(one);
    resolved[name] = chase(value, resolved);
    std::vector<ParamPoly> next;
    for (ParamPoly& eq : work) {
      ParamPoly s = eq.substitute(one);
      if (!s.is_zero()) next.push_back(std::move(s));
    }
    work = std::move(next);
  };

  bool changed = true;
  while (changed && !inconsistent) {
    changed = false;

    // Single-term equations c * u^k = 0 force u = 0; a bare nonzero
    // constant is a contradiction.
    for (std::size_t idx = 0; idx < work.size(); ++idx) {
      const ParamPoly& eq = work[idx];
      if (eq.terms().size() != 1) continue;
      const auto& [mono, coeff] = *eq.terms().begin();
      if (mono.empty()) {
        inconsistent = true;
        break;
      }
      if (mono.size() == 1) {
        apply_binding(mono[0].first, ParamPoly());
        changed = true;
        break;  // work changed; restart the sweep
      }
    }
    if (changed || inconsistent) continue;

    // Affine-linear subsystem, solved by exact elimination. The last
    // column holds constant terms.
    std::vector<std::string> free_order;
    for (const std::string& u : order) {
      if (!resolved.count(u)) free_order.push_back(u);
    }
    std::map<std::string, std::size_t> column;
    for (std::size_t c = 0; c < free_order.size(); ++c) {
      column[free_order[c]] = c;
    }
    const std::size_t constant_col = free_order.size();
    RationalMatrix matrix;
    for (const ParamPoly& eq : work) {
      if (eq.degree() > 1) continue;
      std::vector<Rational> row(constant_col + 1, Rational(0));
      for (const auto& [mono, coeff] : eq.terms()) {
        row[mono.empty() ? constant_col : column.at(mono[0].first)] = coeff;
      }
      matrix.push_back(std::move(row));
    }
    if (!matrix.empty()) {
      const std::vector<std::size_t> pivots = rref(matrix);
      for (std::size_t p = 0; p < pivots.size(); ++p) {
        if (pivots[p] == constant_col) {
          inconsistent = true;  // 0 = 1 row
          break;
        }
        ParamPoly value(-matrix[p][constant_col]);
        for (std::size_t c = pivots[p] + 1; c < constant_col; ++c) {
          if (matrix[p][c] != 0) {
            value -= matrix[p][c] * ParamPoly::unknown(free_order[c]);
          }
        }
        apply_binding(free_order[pivots[p]], value);
        changed = true;
      }
    }
  }

  if (inconsistent) {
    rep.status = SolveStatus::NoSolution;
    return rep;
  }
  if (!work.empty()) {
    rep.status = SolveStatus::NonlinearResidue;
    rep.residue = work;
    return rep;
  }

  // Reconstruct the basis of the solution space, projected onto the
  // reported unknowns (auxiliary directions are existential only).
  rep.status = SolveStatus::SolutionSpace;
  std::vector<std::string> free_vars;
  for (const std::string& u : order) {
    if (!resolved.count(u)) free_vars.push_back(u);
  }
  RationalMatrix vectors;
  for (const std::string& f : free_vars) {
    std::map<std::string, Rational> assignment;
    for (const std::string& u : free_vars) {
      assignment[u] = (u == f) ? 1 : 0;
    }
    std::vector<Rational> v;
    v.reserve(sys.unknowns.size());
    for (const std::string& u : sys.unknowns) {
      if (resolved.count(u)) {
        v.push_back(resolved.at(u).eval(assignment));
      } else {
        v.push_back(u == f ? Rational(1) : Rational(0));
      }
    }
    bool nonzero = false;
    for (const Rational& c : v) {
      if (c != 0) nonzero = true;
    }
    if (nonzero) vectors.push_back(std::move(v));
  }
  rref(vectors);
  for (auto& v : vectors) {
    bool nonzero = false;
    for (const Rational& c : v) {
      if (c != 0) nonzero = true;
    }
    if (nonzero) rep.basis.push_back(std::move(v));
  }
  rep.dimension = rep.basis.size();

  if (rep.dimension == 1) {
    std::string names, values;
    for (std::size_t k = 0; k < sys.unknowns.size(); ++k) {
      if (k) {
        names += ":";
        values += ":";
      }
      names += sys.unknowns[k];
      values += to_string(rep.basis[0][k]);
    }
    rep.proportions = names + " = " + values;
  }
  return rep;
}

namespace {

std::string proportion_string(const std::vector<std::string>& names,
                              const std::vector<Rational>& values) {
  // Normalized so the first nonzero coordinate is 1.
  Rational lead(0);
  for (const Rational& v : values) {
    if (v != 0) {
      lead = v;
      break;
    }
  }
  std::string ns, vs;
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (k) {
      ns += ":";
      vs += ":";
    }
    ns += names[k];
    vs += to_string(lead == 0 ? values[k] : Rational(values[k] / lead));
  }
  return ns + " = " + vs;
}

// Primitive integer representative of a rational direction: denominators
// cleared, gcd 1, first nonzero entry positive.
std::vector<Rational> primitive_direction(const std::vector<Rational>& v) {
  Integer lcm(1);
  for (const Rational& c : v) {
    const Integer d = denominator(c);
    lcm = boost::multiprecision::lcm(lcm, d);
  }
  std::vector<Integer> ints;
  Integer g(0);
  for (const Rational& c : v) {
    const Integer n = numerator(Rational(c * lcm));
    ints.push_back(n);
    g = boost::multiprecision::gcd(g, n);
  }
  if (g == 0) return v;  // zero vector
  Integer sign(0);
  for (const Integer& n : ints) {
    if (n != 0) {
      sign = n < 0 ? -1 : 1;
      break;
    }
  }
  std::vector<Rational> out;
  for (const Integer& n : ints) out.emplace_back(n / (g * sign));
  return out;
}

// Builds the concrete relation set of one coordinate vector of an ansatz.
RelationSet instantiate_solution(const GeneratorSet& gens,
                                 const AnsatzSpec& spec,
                                 const Truncation& trunc,
                                 const std::vector<std::string>& unknowns,
                                 const std::vector<Rational>& coords) {
  std::map<std::string, ParamPoly> assignment;
  for (std::size_t k = 0; k < unknowns.size(); ++k) {
    assignment[unknowns[k]] = ParamPoly(coords[k]);
  }
  return ansatz_relations(gens, spec, trunc).substituted(assignment);
}

bool residuals_vanish(const Dynamics& dyn, const RelationSet& rels) {
  const std::size_t n = dyn.gens.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!preservation_residual(dyn, rels, i, j).is_zero()) return false;
    }
  }
  return true;
}

// Enumerates primitive integer triples of sup-norm 1..height with positive
// leading sign, smallest first, and returns the certified directions.
std::vector<std::vector<Rational>> certified_scan(
    const Dynamics& dyn, const AnsatzSpec& spec, const Truncation& trunc,
    const std::vector<std::string>& unknowns, unsigned height,
    const std::vector<std::vector<Rational>>& seeds) {
  std::vector<std::vector<Rational>> certified;
  std::set<std::vector<Rational>> seen;
  const auto try_point = [&](const std::vector<Rational>& raw) {
    const std::vector<Rational> p = primitive_direction(raw);
    bool nonzero = false;
    for (const Rational& c : p) {
      if (c != 0) nonzero = true;
    }
    if (!nonzero || !seen.insert(p).second) return;
    const RelationSet rels =
        instantiate_solution(dyn.gens, spec, trunc, unknowns, p);
    try {
      if (residuals_vanish(dyn, rels)) certified.push_back(p);
    } catch (const ReductionError&) {
      // this point's normal forms are out of engine scope: not certifiable
    }
  };

  for (const auto& s : seeds) try_point(s);

  const std::size_t dim = unknowns.size();
  if (dim == 0 || dim > 3) return certified;
  std::vector<long> v(dim, 0);
  const std::function<void(std::size_t, long)> rec = [&](std::size_t pos,
                                                         long bound) {
    if (pos == dim) {
      long sup = 0;
      for (const long c : v) sup = std::max(sup, std::abs(c));
      if (sup != bound) return;  // only new points at this height
      std::vector<Rational> p;
      for (const long c : v) p.emplace_back(c);
      try_point(p);
      return;
    }
    for (long c = -bound; c <= bound; ++c) {
      v[pos] = c;
      rec(pos + 1, bound);
    }
  };
  for (long h = 1; h <= static_cast<long>(height); ++h) rec(0, h);
  return certified;
}

std::optional<std::array<std::array<Rational, 2>, 2>> linear_matrix(
    const Dynamics& dyn) {
  if (dyn.gens.size() != 2) return std::nullopt;
  std::array<std::array<Rational, 2>, 2> a{};
  for (std::size_t i = 0; i < 2; ++i) {
    for (const auto& [w, c] : dyn.rhs[i].terms()) {
      if (w.size() != 1) return std::nullopt;
      a[i][w[0]] = c.constant_value();
    }
  }
  return a;
}

std::string multidegree_label(const GeneratorSet& gens,
                              const std::vector<unsigned>& m) {
  std::string label;
  for (std::size_t g = 0; g < m.size(); ++g) {
    if (m[g] == 0) continue;
    if (!label.empty()) label += "*";
    label += gens.names[g];
    if (m[g] > 1) label += "^" + std::to_string(m[g]);
  }
  return label.empty() ? "1" : label;
}

// Expresses the reduced rhs of a pair over the reduced symmetrized
// monomials; empty on failure (degenerate basis).
std::map<std::string, Rational> symmetric_decomposition(
    const RelationSet& rels, std::size_t i, std::size_t j) {
  const GeneratorSet& gens = rels.gens();
  Reducer red(rels);
  NCPoly target = red.reduce(rels.rhs(i, j));
  const unsigned deg = std::max(target.degree(), rels.rhs(i, j).degree());

  std::vector<std::vector<unsigned>> degrees = multidegrees_up_to(gens.size(), deg);
  std::vector<NCPoly> images;
  for (const auto& m : degrees) {
    images.push_back(red.reduce(weyl_symmetrize(gens, m)));
  }

  std::map<Word, std::size_t, WordOrder> row_of;
  const auto row_index = [&](const Word& w) {
    return row_of.emplace(w, row_of.size()).first->second;
  };
  for (const NCPoly& img : images) {
    for (const auto& [w, c] : img.terms()) row_index(w);
  }
  for (const auto& [w, c] : target.terms()) row_index(w);

  RationalMatrix a(row_of.size(), std::vector<Rational>(degrees.size(), Rational(0)));
  std::vector<Rational> b(row_of.size(), Rational(0));
  for (std::size_t k = 0; k < images.size(); ++k) {
    for (const auto& [w, c] : images[k].terms()) {
      a[row_index(w)][k] = c.constant_value();
    }
  }
  for (const auto& [w, c] : target.terms()) {
    b[row_index(w)] = c.constant_value();
  }
  const LinearSolution sol = solve_affine(a, b, degrees.size());
  std::map<std::string, Rational> out;
  if (!sol.consistent) return out;
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    if (sol.particular[k] != 0) {
      out[multidegree_label(gens, degrees[k])] = sol.particular[k];
    }
  }
  if (out.empty()) out["1"] = 0;
  return out;
}

std::string relation_string(const RelationSet& rels) {
  const GeneratorSet& gens = rels.gens();
  std::string out;
  for (std::size_t i = 0; i + 1 < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (!out.empty()) out += "; ";
      out += "[" + gens.names[i] + "," + gens.names[j] + "] = " +
             rels.rhs(i, j).str();
    }
  }
  return out;
}

}  // namespace

LiberateResult liberate(const Dynamics& dyn, const LiberateOptions& opts) {
  LiberateResult res;
  if (const auto a = linear_matrix(dyn)) {
    try {
      res.case_label = classify_2x2(*a);
    } catch (const std::invalid_argument&) {
      // irrational spectrum: leave the label empty
    }
  }

  const AnsatzSpec ansatz = make_ansatz(dyn, opts.mode, opts.maxdeg);
  Truncation trunc = Unbounded{};
  if (opts.cap) {
    trunc = DegreeCap{*opts.cap};
  } else if (opts.mode == AnsatzMode::Resonance ||
             opts.mode == AnsatzMode::Full) {
    trunc = DegreeCap{std::max(opts.maxdeg, 2u)};
  }

  EquationSystem sys = build_system(dyn, ansatz, trunc);
  SolveReport rep = solve_system(sys);
  res.unknowns = sys.unknowns;
  res.system = std::move(sys);

  std::vector<std::vector<Rational>> basis = rep.basis;
  bool from_scan = false;

  if (rep.status == SolveStatus::NonlinearResidue) {
    // Certified projective scan over the (small) ansatz coordinate space.
    std::vector<std::vector<Rational>> seeds;
    if (opts.mode == AnsatzMode::Quadratic) {
      for (const NCPoly& f : dyn.rhs) {
        std::vector<Rational> s(3, Rational(0));
        s[0] = f.coeff(Word{0, 0}).is_zero() ? Rational(0)
                                             : f.coeff(Word{0, 0}).constant_value();
        const ParamPoly mixed = f.coeff(Word{0, 1}) + f.coeff(Word{1, 0});
        s[1] = mixed.is_zero() ? Rational(0) : mixed.constant_value();
        s[2] = f.coeff(Word{1, 1}).is_zero() ? Rational(0)
                                             : f.coeff(Word{1, 1}).constant_value();
        seeds.push_back(std::move(s));
      }
    }
    const auto certified = certified_scan(dyn, res.system.ansatz, trunc,
                                          res.unknowns, opts.scan_height, seeds);
    if (certified.empty()) {
      res.status = SolveStatus::NoSolution;
      res.residue = rep.residue;
      return res;
    }
    RationalMatrix span = certified;
    rref(span);
    std::vector<std::vector<Rational>> span_basis;
    for (auto& row : span) {
      bool nonzero = false;
      for (const Rational& c : row) {
        if (c != 0) nonzero = true;
      }
      if (nonzero) span_basis.push_back(std::move(row));
    }
    // The scan certifies individual points, but a solution-space claim is
    // stronger: every vector in the span must be preserved.  Preservation is
    // not scale-invariant in general (a relation can hold at an isolated
    // scale without its multiples holding), so probe the echelon rows at the
    // exact scale they will be reported, a doubled row, and the row sum.
    bool closed = true;
    {
      std::vector<std::vector<Rational>> checks = span_basis;
      std::vector<Rational> doubled = span_basis.front();
      for (Rational& c : doubled) c *= 2;
      checks.push_back(std::move(doubled));
      if (span_basis.size() > 1) {
        std::vector<Rational> sum(res.unknowns.size(), Rational(0));
        for (const auto& v : span_basis) {
          for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += v[k];
        }
        checks.push_back(std::move(sum));
      }
      for (const auto& v : checks) {
        try {
          const RelationSet rels = instantiate_solution(
              dyn.gens, res.system.ansatz, trunc, res.unknowns, v);
          if (!residuals_vanish(dyn, rels)) closed = false;
        } catch (const ReductionError&) {
          closed = false;
        }
        if (!closed) break;
      }
    }
    if (!closed) {
      res.status = SolveStatus::NonlinearResidue;
      res.residue = rep.residue;
      basis = certified;  // report the individual certified directions
    } else {
      basis = std::move(span_basis);
      rep.status = SolveStatus::SolutionSpace;
    }
    from_scan = true;
  }

  if (rep.status == SolveStatus::SolutionSpace || !basis.empty()) {
    if (rep.status == SolveStatus::SolutionSpace && basis.empty()) {
      res.status = SolveStatus::NoSolution;
      return res;
    }

    // Parametric revalidation of linear-path spaces: the whole family,
    // with fresh parameters, must leave zero residuals identically.
    if (!from_scan && !res.system.ansatz.symmetric) {
      std::map<std::string, ParamPoly> family;
      for (std::size_t k = 0; k < res.unknowns.size(); ++k) {
        ParamPoly combo;
        for (std::size_t b = 0; b < basis.size(); ++b) {
          combo += basis[b][k] * ParamPoly::unknown("_t" + std::to_string(b));
        }
        family[res.unknowns[k]] = combo;
      }
      const RelationSet rels =
          ansatz_relations(dyn.gens, res.system.ansatz, trunc).substituted(family);
      if (!residuals_vanish(dyn, rels)) {
        throw InvariantViolation(
            "solution family fails parametric revalidation");
      }
    }

    for (const auto& coords : basis) {
      RelationSet rels = instantiate_solution(dyn.gens, res.system.ansatz,
                                              trunc, res.unknowns, coords);
      if (!residuals_vanish(dyn, rels)) {
        throw InvariantViolation("reported solution fails revalidation");
      }
      LiberatedSolution sol{coords, rels, relation_string(rels), {},
                            PbwReport{}, opts.flow_order, false};
      unsigned pbw_deg = opts.pbw_maxdeg;
      if (const auto cap = cap_of(trunc)) pbw_deg = std::min(pbw_deg, *cap);
      sol.pbw = pbw_check(rels, pbw_deg);
      const FlowCheck flow = flow_preserves(dyn, rels, opts.flow_order);
      sol.flow_preserved = flow.preserved;
      if (dyn.gens.size() == 2) {
        sol.symmetric_coefficients = symmetric_decomposition(rels, 0, 1);
      }
      if (!sol.pbw.passed() || !sol.flow_preserved) continue;  // not revalidated
      res.solutions.push_back(std::move(sol));
    }
    res.dimension = res.solutions.size();
    if (res.status != SolveStatus::NonlinearResidue) {
      res.status = res.dimension == 0 ? SolveStatus::NoSolution
                                      : SolveStatus::SolutionSpace;
    }
    if (res.dimension == 1) {
      res.proportions =
          proportion_string(res.unknowns, res.solutions[0].coordinates);
    }
    return res;
  }

  res.status = rep.status;
  res.residue = rep.residue;
  return res;
}

PbwReport jacobi_check(const RelationSet& rels, unsigned maxdeg) {
  return pbw_check(rels, maxdeg);
}

}  // namespace liberator
