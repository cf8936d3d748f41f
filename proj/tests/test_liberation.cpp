// Liberation layer: resonance multidegrees, the five-case classification,
// the exact equation solver and the end-to-end search.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "liberator/liberation.hpp"

#include <set>
#include <stdexcept>
#include <utility>

using namespace liberator;

namespace {

const GeneratorSet g{{"X", "Y"}};
const NCPoly x = NCPoly::generator(g, 0);
const NCPoly y = NCPoly::generator(g, 1);

using PairSet = std::set<std::pair<unsigned, unsigned>>;

std::array<std::array<Rational, 2>, 2> mat(int a, int b, int c, int d) {
  return {{{Rational(a), Rational(b)}, {Rational(c), Rational(d)}}};
}

// dX/dt = aX^2 + b{X,Y} + cY^2, dY/dt = dX^2 + e{X,Y} + fY^2
Dynamics quad_dynamics(int a, int b, int c, int d, int e, int f) {
  const NCPoly sym = weyl_symmetrize(g, {1, 1});
  return make_dynamics(g, {Rational(a) * (x * x) + Rational(b) * sym +
                               Rational(c) * (y * y),
                           Rational(d) * (x * x) + Rational(e) * sym +
                               Rational(f) * (y * y)});
}

}  // namespace

TEST_CASE("resonance multidegrees") {
  // lambda (i - 1) + mu (j - 1) = 0, i + j <= maxdeg
  CHECK(resonance_monomials(0, 1, 3) == PairSet{{0, 1}, {1, 1}, {2, 1}});
  CHECK(resonance_monomials(1, -1, 6) ==
        PairSet{{0, 0}, {1, 1}, {2, 2}, {3, 3}});
  CHECK(resonance_monomials(-1, 2, 8) == PairSet{{1, 1}, {3, 2}, {5, 3}});
  CHECK(resonance_monomials(-2, 3, 8) == PairSet{{1, 1}, {4, 3}});
  // the eigenvalue pair (1, 2) admits X^3 on top of XY
  CHECK(resonance_monomials(1, 2, 8) == PairSet{{1, 1}, {3, 0}});
  CHECK(resonance_monomials(1, 1, 4) == PairSet{{0, 2}, {1, 1}, {2, 0}});
  // rational rates scale out
  CHECK(resonance_monomials(Rational(1, 2), Rational(-1, 2), 6) ==
        resonance_monomials(1, -1, 6));
  // zero dynamics admits everything
  CHECK(resonance_monomials(0, 0, 2).size() == 6);
  CHECK(resonance_monomials_generic(6) == PairSet{{1, 1}});
  CHECK(resonance_monomials_generic(1) == PairSet{});
}

TEST_CASE("classification of 2x2 linear dynamics") {
  auto expect = [](const std::array<std::array<Rational, 2>, 2>& m,
                   CaseKind kind, const Rational& lambda, const Rational& mu) {
    const CaseLabel c = classify_2x2(m);
    CHECK(c.kind == kind);
    CHECK(c.lambda == lambda);
    CHECK(c.mu == mu);
  };
  expect(mat(1, 0, 0, 2), CaseKind::QuantumPlane, 2, 1);
  expect(mat(3, 0, 0, 3), CaseKind::Quadratic, 3, 3);
  expect(mat(0, 0, 0, 1), CaseKind::PolyTimesY, 1, 0);
  expect(mat(1, 0, 0, -1), CaseKind::WignerDiagonal, 1, -1);
  expect(mat(2, 0, 0, -1), CaseKind::MixedPowers, 2, -1);
  expect(mat(1, 1, 0, 1), CaseKind::JordanBlock, 1, 1);
  expect(mat(0, 0, 0, 0), CaseKind::ZeroDynamics, 0, 0);
  // non-diagonal inputs classify by eigenstructure
  expect(mat(0, 1, 1, 0), CaseKind::WignerDiagonal, 1, -1);
  expect(mat(1, 1, 1, 1), CaseKind::PolyTimesY, 2, 0);
  expect(mat(0, 2, 1, 1), CaseKind::MixedPowers, 2, -1);
  expect(mat(2, 1, 0, 2), CaseKind::JordanBlock, 2, 2);

  // eigenvalues are transpose-invariant
  const CaseLabel a = classify_2x2(mat(0, 2, 1, 1));
  const CaseLabel b = classify_2x2(mat(0, 2, 1, 1), true);
  CHECK(a.kind == b.kind);
  CHECK(a.lambda == b.lambda);

  CHECK_THROWS_WITH_AS(
      classify_2x2(mat(0, 1, -1, 0)),
      "irrational or complex eigenvalues unsupported; use --generic-ratio mode",
      std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      classify_2x2(mat(0, 1, 1, 1)),
      "irrational or complex eigenvalues unsupported; use --generic-ratio mode",
      std::invalid_argument);
}

TEST_CASE("case label names") {
  CHECK(classify_2x2(mat(1, 0, 0, 2)).name() == "QuantumPlane");
  CHECK(classify_2x2(mat(3, 0, 0, 3)).name() == "Quadratic");
  CHECK(classify_2x2(mat(0, 0, 0, 1)).name() == "PolyTimesY");
  CHECK(classify_2x2(mat(1, 0, 0, -1)).name() == "WignerDiagonal");
  CHECK(classify_2x2(mat(2, 0, 0, -1)).name() == "MixedPowers");
  CHECK(classify_2x2(mat(1, 1, 0, 1)).name() == "JordanBlock");
  CHECK(classify_2x2(mat(0, 0, 0, 0)).name() == "ZeroDynamics");
}

TEST_CASE("ansatz construction") {
  const Dynamics lin = make_dynamics(g, {x, Rational(2) * y});

  const AnsatzSpec linear = make_ansatz(lin, AnsatzMode::Linear, 6);
  CHECK_FALSE(linear.symmetric);
  REQUIRE(linear.entries.count({0, 1}) == 1);
  const auto& entries = linear.entries.at({0, 1});
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].multidegree == std::vector<unsigned>{1, 0});
  CHECK(entries[0].unknown == "alpha");
  CHECK(entries[1].multidegree == std::vector<unsigned>{0, 1});
  CHECK(entries[1].unknown == "beta");

  // the quadratic ansatz goes symmetric exactly for homogeneous quadratic
  // dynamics (the ideal-membership formulation)
  CHECK(make_ansatz(quad_dynamics(1, 0, 0, 0, 0, 1), AnsatzMode::Quadratic, 6)
            .symmetric);
  CHECK_FALSE(make_ansatz(lin, AnsatzMode::Quadratic, 6).symmetric);

  const AnsatzSpec res = make_ansatz(lin, AnsatzMode::Resonance, 6);
  PairSet degrees;
  for (const auto& e : res.entries.at({0, 1}))
    degrees.insert({e.multidegree[0], e.multidegree[1]});
  CHECK(degrees == PairSet{{1, 1}, {3, 0}});

  const AnsatzSpec full = make_ansatz(lin, AnsatzMode::Full, 2);
  CHECK(full.entries.at({0, 1}).size() == 6);  // all |m| <= 2

  CHECK_THROWS_WITH_AS(
      make_ansatz(make_dynamics(g, {x + y, y}), AnsatzMode::Resonance, 6),
      "resonance ansatz requires diagonal dynamics", std::invalid_argument);
}

TEST_CASE("solve_system") {
  EquationSystem sys;
  sys.unknowns = {"u", "v"};

  SUBCASE("no equations: the full space") {
    const SolveReport r = solve_system(sys);
    CHECK(r.status == SolveStatus::SolutionSpace);
    CHECK(r.dimension == 2);
    REQUIRE(r.basis.size() == 2);
    CHECK(r.basis[0] == std::vector<Rational>{1, 0});
    CHECK(r.basis[1] == std::vector<Rational>{0, 1});
  }
  SUBCASE("a nonzero constant is unsatisfiable") {
    sys.equations = {ParamPoly(1)};
    CHECK(solve_system(sys).status == SolveStatus::NoSolution);
  }
  SUBCASE("a power equation forces its unknown to zero") {
    sys.equations = {ParamPoly::unknown("u", 2)};
    const SolveReport r = solve_system(sys);
    CHECK(r.status == SolveStatus::SolutionSpace);
    CHECK(r.dimension == 1);
    CHECK(r.basis[0] == std::vector<Rational>{0, 1});
  }
  SUBCASE("linear elimination with proportions") {
    sys.equations = {ParamPoly::unknown("u") -
                     Rational(2) * ParamPoly::unknown("v")};
    const SolveReport r = solve_system(sys);
    CHECK(r.status == SolveStatus::SolutionSpace);
    CHECK(r.dimension == 1);
    CHECK(r.proportions == "u:v = 1:1/2");
  }
  SUBCASE("power cascade then elimination") {
    sys.equations = {Rational(3) * ParamPoly::unknown("u", 2),
                     ParamPoly::unknown("u") + ParamPoly::unknown("v")};
    const SolveReport r = solve_system(sys);
    CHECK(r.status == SolveStatus::SolutionSpace);
    CHECK(r.dimension == 0);
  }
  SUBCASE("a genuinely nonlinear equation is reported as residue") {
    sys.equations = {ParamPoly::unknown("u") * ParamPoly::unknown("v") -
                     ParamPoly(1)};
    const SolveReport r = solve_system(sys);
    CHECK(r.status == SolveStatus::NonlinearResidue);
    REQUIRE(r.residue.size() == 1);
    CHECK(r.residue[0] == sys.equations[0]);
  }
}

TEST_CASE("liberate: quantum plane") {
  const Dynamics d = make_dynamics(g, {x, Rational(2) * y});
  const LiberateResult r = liberate(d, LiberateOptions{});

  CHECK(r.status == SolveStatus::SolutionSpace);
  REQUIRE(r.case_label.has_value());
  CHECK(r.case_label->kind == CaseKind::QuantumPlane);
  CHECK(r.unknowns == std::vector<std::string>{"a_1_1", "a_3_0"});
  CHECK(r.dimension == 2);
  REQUIRE(r.solutions.size() == 2);
  CHECK(r.solutions[0].relation_str == "[X,Y] = X*Y");
  CHECK(r.solutions[1].relation_str == "[X,Y] = X^3");
  for (const auto& s : r.solutions) {
    CHECK(s.pbw.passed());
    CHECK(s.flow_preserved);
    CHECK(s.flow_order >= 6);
  }
  // the symmetric decomposition of [X,Y] = XY in its own quotient
  CHECK(r.solutions[0].symmetric_coefficients ==
        std::map<std::string, Rational>{{"X*Y", Rational(2)}});
}

TEST_CASE("liberate: opposite eigenvalues") {
  const Dynamics d = make_dynamics(g, {x, -y});
  const LiberateResult r = liberate(d, LiberateOptions{});

  CHECK(r.dimension == 4);
  CHECK(r.unknowns ==
        std::vector<std::string>{"a_0_0", "a_1_1", "a_2_2", "a_3_3"});
  REQUIRE(r.solutions.size() == 4);
  CHECK(r.solutions[0].relation_str == "[X,Y] = 1");
  CHECK(r.solutions[1].relation_str == "[X,Y] = X*Y");
  CHECK(r.solutions[2].relation_str == "[X,Y] = X^2*Y^2");
  CHECK(r.solutions[3].relation_str == "[X,Y] = X^3*Y^3");
  for (const auto& s : r.solutions) {
    CHECK(s.pbw.passed());
    CHECK(s.flow_preserved);
  }
}

TEST_CASE("liberate: Jordan block") {
  // matched convention dX/dt = X + Y, dY/dt = Y
  const Dynamics d = make_dynamics(g, {x + y, y});

  LiberateOptions lin;
  lin.mode = AnsatzMode::Linear;
  const LiberateResult rl = liberate(d, lin);
  CHECK(rl.status == SolveStatus::NoSolution);
  CHECK(rl.dimension == 0);
  CHECK(rl.solutions.empty());
  REQUIRE(rl.case_label.has_value());
  CHECK(rl.case_label->kind == CaseKind::JordanBlock);

  LiberateOptions quad;
  quad.mode = AnsatzMode::Quadratic;
  const LiberateResult rq = liberate(d, quad);
  CHECK(rq.dimension == 1);
  CHECK(rq.proportions == "alpha:beta:gamma = 0:0:1");
  REQUIRE(rq.solutions.size() == 1);
  CHECK(rq.solutions[0].relation_str == "[X,Y] = Y^2");

  // the displayed convention dX/dt = X, dY/dt = Y + X picks X^2 instead
  const Dynamics disp = make_dynamics(g, {x, y + x});
  const LiberateResult rd = liberate(disp, quad);
  CHECK(rd.dimension == 1);
  CHECK(rd.proportions == "alpha:beta:gamma = 1:0:0");
  REQUIRE(rd.solutions.size() == 1);
  CHECK(rd.solutions[0].relation_str == "[X,Y] = X^2");

  // the resonance ansatz needs diagonal dynamics
  CHECK_THROWS_AS(liberate(d, LiberateOptions{}), std::invalid_argument);
}

TEST_CASE("liberate: linear ansatz under quadratic dynamics") {
  // instance (a..f) = (1,0,-1,0,-1,1) satisfies both solvability conditions
  const Dynamics d = quad_dynamics(1, 0, -1, 0, -1, 1);
  LiberateOptions o;
  o.mode = AnsatzMode::Linear;
  const LiberateResult r = liberate(d, o);

  CHECK(r.status == SolveStatus::SolutionSpace);
  CHECK_FALSE(r.case_label.has_value());  // not linear dynamics
  CHECK(r.dimension == 1);
  CHECK(r.proportions == "alpha:beta = 1:-1");  // the -a : f direction
  REQUIRE(r.solutions.size() == 1);
  CHECK(r.solutions[0].relation_str == "[X,Y] = -Y + X");
  CHECK(r.solutions[0].flow_preserved);

  // perturbing one coefficient breaks the conditions
  LiberateOptions o2 = o;
  const LiberateResult r2 = liberate(quad_dynamics(1, 0, -1, 0, -1, 2), o2);
  CHECK(r2.dimension == 0);
}

TEST_CASE("liberate: quadratic ansatz under quadratic dynamics") {
  LiberateOptions o;
  o.mode = AnsatzMode::Quadratic;
  o.scan_height = 2;

  // proportional rows (1,1,1) and (2,2,2): one symmetric direction
  const LiberateResult pos = liberate(quad_dynamics(1, 1, 1, 2, 2, 2), o);
  CHECK(pos.status == SolveStatus::SolutionSpace);
  CHECK(pos.dimension == 1);
  CHECK(pos.proportions == "alpha:beta:gamma = 1:1:1");
  REQUIRE(pos.solutions.size() == 1);
  CHECK(pos.solutions[0].flow_preserved);
  CHECK(pos.solutions[0].pbw.passed());

  // non-proportional rows admit nothing
  const LiberateResult neg = liberate(quad_dynamics(1, 1, 1, 1, 2, 3), o);
  CHECK(neg.dimension == 0);
  CHECK(neg.solutions.empty());

  // the coexistence instance (1,-2,1,1,-2,1), where theta = -1 forces the
  // span engine; the certified scan still finds the direction at height 2
  const LiberateResult coex = liberate(quad_dynamics(1, -2, 1, 1, -2, 1), o);
  CHECK(coex.dimension == 1);
  CHECK(coex.proportions == "alpha:beta:gamma = 1:-2:1");
  REQUIRE(coex.solutions.size() == 1);
  CHECK(coex.solutions[0].relation_str ==
        "[X,Y] = Y^2 - Y*X - X*Y + X^2");
  CHECK(coex.solutions[0].pbw.passed());
  CHECK(coex.solutions[0].flow_preserved);

  // its linear branch coexists
  LiberateOptions ol;
  ol.mode = AnsatzMode::Linear;
  const LiberateResult lin = liberate(quad_dynamics(1, -2, 1, 1, -2, 1), ol);
  CHECK(lin.dimension == 1);
  CHECK(lin.proportions == "alpha:beta = 1:-1");
}

TEST_CASE("jacobi_check alias") {
  RelationSet ccr(g, Unbounded{});
  ccr.set_rhs(0, 1, NCPoly::scalar(g, 1));
  const PbwReport pbw = jacobi_check(ccr, 4);
  CHECK(pbw.passed());
  REQUIRE(pbw.dimensions.size() == 5);
  CHECK(pbw.dimensions[4].expected == 5);
}
