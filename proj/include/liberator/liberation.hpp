#pragma once

#include "liberator/dynamics.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace liberator {

// Multidegrees (i, j) with total degree <= maxdeg whose symmetrized monomial
// X^i Y^j can appear in a relation preserved by the diagonal flow with
// d X/dt = lambda X, d Y/dt = mu Y; these solve
// lambda (i - 1) + mu (j - 1) = 0. Zero dynamics admits every multidegree.
std::set<std::pair<unsigned, unsigned>> resonance_monomials(
    const Rational& lambda, const Rational& mu, unsigned maxdeg);

// Multidegrees admissible for every ratio lambda : mu at once, i.e. {(1,1)}.
std::set<std::pair<unsigned, unsigned>> resonance_monomials_generic(
    unsigned maxdeg);

enum class CaseKind {
  QuantumPlane,     // distinct nonzero eigenvalues of equal sign
  Quadratic,        // equal nonzero eigenvalues, diagonalizable
  PolyTimesY,       // exactly one zero eigenvalue
  WignerDiagonal,   // opposite eigenvalues lambda = -mu != 0
  MixedPowers,      // opposite signs, lambda != -mu
  JordanBlock,      // non-diagonalizable
  ZeroDynamics,     // zero matrix
};

struct CaseLabel {
  CaseKind kind = CaseKind::ZeroDynamics;
  Rational lambda;  // eigenvalues, lambda >= mu
  Rational mu;
  std::string name() const;
};

// Classifies the linear 2-generator system d e/dt = A e (rows convention:
// f_i = sum_j A[i][j] e_j; the transpose flag classifies A^T instead).
// Irrational or non-real eigenvalues are unsupported and raise
// std::invalid_argument suggesting --generic-ratio mode.
CaseLabel classify_2x2(const std::array<std::array<Rational, 2>, 2>& a,
                       bool transpose = false);

// Relation ansatz: per generator pair, the multidegrees allowed in the rhs
// and the unknown name bound to each. `symmetric` selects whether unknowns
// multiply symmetrized monomials or sorted words.
struct AnsatzSpec {
  struct Entry {
    std::vector<unsigned> multidegree;
    std::string unknown;
  };
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Entry>> entries;
  bool symmetric = false;
};

enum class AnsatzMode { Resonance, Linear, Quadratic, Full };

// Raised when a solution that must revalidate fails to; reaching this means
// a solver bug, and the CLI maps it to exit code 3.
struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Canonical ansatz for a mode: Linear binds alpha, beta to X, Y; Quadratic
// binds alpha, beta, gamma to the symmetrized quadratics X^2, {X,Y}, Y^2;
// Resonance binds a_i_j to the resonance multidegrees of a diagonal system;
// Full binds a_i_j to every multidegree of total degree <= maxdeg.
AnsatzSpec make_ansatz(const Dynamics& dyn, AnsatzMode mode, unsigned maxdeg);

// Polynomial equations in the ansatz unknowns whose vanishing is equivalent
// to the flow preserving the parametric relation set. `auxiliary` lists
// existentially quantified helper unknowns (ideal-membership multipliers)
// that are not part of the solution space.
struct EquationSystem {
  std::vector<ParamPoly> equations;
  std::vector<std::string> unknowns;   // ansatz unknowns, reporting order
  std::vector<std::string> auxiliary;  // helper unknowns, if any
  AnsatzSpec ansatz;                   // the ansatz the unknowns came from
  Truncation truncation = Unbounded{};
};

// Derives the preservation equations for the given ansatz. The rewriting
// engine is used when the parametric normal forms are polynomial in the
// unknowns; otherwise (homogeneous quadratic ansatz under homogeneous
// quadratic dynamics) the equations state that the derivative of the
// relation element lies in the degree-3 slice of its two-sided ideal.
EquationSystem build_system(const Dynamics& dyn, const AnsatzSpec& ansatz,
                            const Truncation& trunc);

enum class SolveStatus { NoSolution, SolutionSpace, NonlinearResidue };

struct SolveReport {
  SolveStatus status = SolveStatus::NoSolution;
  std::vector<std::string> unknowns;  // coordinate order for basis vectors
  std::vector<std::vector<Rational>> basis;
  std::size_t dimension = 0;
  // For NonlinearResidue: the equations the linear passes could not settle.
  std::vector<ParamPoly> residue;
  // For a 1-dimensional space: "name:...:name = v:...:v" with the first
  // nonzero coordinate normalized to 1.
  std::string proportions;
};

// Solves an EquationSystem by alternating two exact passes to a fixpoint:
// single-unknown power equations (c u^k = 0 forces u = 0) and elimination on
// the purely linear subsystem. Auxiliary unknowns are eliminated the same
// way but never appear in the reported space.
SolveReport solve_system(const EquationSystem& sys);

struct LiberateOptions {
  AnsatzMode mode = AnsatzMode::Resonance;
  unsigned maxdeg = 6;        // ansatz degree bound (resonance / full)
  unsigned flow_order = 6;    // verification order for reported solutions
  unsigned pbw_maxdeg = 6;
  unsigned scan_height = 8;   // bound for the certified projective scan
  std::optional<unsigned> cap;  // explicit truncation override
};

// One reported relation set, revalidated end to end.
struct LiberatedSolution {
  std::vector<Rational> coordinates;        // over LiberateResult::unknowns
  RelationSet relations;                    // concrete representative
  std::string relation_str;                 // canonical rendering of the rhs
  std::map<std::string, Rational> symmetric_coefficients;  // label -> coeff
  PbwReport pbw;
  unsigned flow_order = 0;
  bool flow_preserved = false;
};

struct LiberateResult {
  SolveStatus status = SolveStatus::NoSolution;
  std::optional<CaseLabel> case_label;  // present for linear 2x2 dynamics
  std::vector<std::string> unknowns;
  std::size_t dimension = 0;
  std::vector<LiberatedSolution> solutions;  // one per basis direction
  std::string proportions;                   // when dimension == 1
  std::vector<ParamPoly> residue;            // when NonlinearResidue
  EquationSystem system;                     // the system that was solved
};

// End-to-end search for preserved commutation relations: builds the ansatz,
// derives and solves the equations, falls back to a certified projective
// scan when a nonlinear residue survives, and revalidates every reported
// solution (zero preservation residual, pbw_check, flow_preserves) before
// returning it.
LiberateResult liberate(const Dynamics& dyn, const LiberateOptions& opts);

// Associativity evidence for the quotient: overlap reductions agree and
// symmetrized-monomial dimensions match (alias of pbw_check; with two
// generators there are no triples, so only the dimension audit applies).
PbwReport jacobi_check(const RelationSet& rels, unsigned maxdeg);

}  // namespace liberator
