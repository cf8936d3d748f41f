#pragma once

#include "liberator/hamiltonian.hpp"
#include "liberator/liberation.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace liberator {

// One row of the claim audit table produced by the repro run.
struct DiscrepancyRow {
  std::string claim;
  std::string reference;  // the published value
  std::string computed;
  std::string verdict;    // "VERIFIED" or "DISCREPANT"
};

struct RunOptions {
  std::string command;  // classify | liberate | hamiltonian | flow-verify | repro

  std::optional<std::array<Rational, 4>> matrix;  // row-major 2x2
  std::optional<std::array<Rational, 6>> quad;    // a..f, see below
  std::optional<std::string> dynamics_text;       // full system, parsed
  std::vector<std::string> relations;             // "[X,Y] = ..." strings

  std::string ansatz = "resonance";  // resonance | linear | quadratic | full
  unsigned maxdeg = 6;
  unsigned order = 8;                // flow-verify order
  std::optional<unsigned> cap;       // truncation cap
  bool transpose_convention = false; // read --matrix as columns (A^T rows)
  bool generic_ratio = false;
  bool require_solution = false;
  unsigned scan_height = 8;
  int example = 0;                   // repro: 0 = all, 1 or 2 to filter
};

// Exit codes: 0 success; 1 usage/parse error; 2 --require-solution with an
// empty solution space; 3 internal revalidation failure.
struct RunResult {
  nlohmann::json report;
  int exit_code = 0;
};

// Builds the Dynamics implied by the options:
//  --matrix a,b,c,d : dX/dt = aX + bY, dY/dt = cX + dY (rows convention;
//                     the transpose flag swaps to columns),
//  --quad a,b,c,d,e,f : dX/dt = aX^2 + b{X,Y} + cY^2,
//                       dY/dt = dX^2 + e{X,Y} + fY^2,
//  --dynamics : parsed verbatim.
Dynamics dynamics_from_options(const RunOptions& opts);

// Executes one CLI command and assembles its deterministic JSON report
// (sorted keys, exact rationals rendered as strings).
RunResult run(const RunOptions& opts);

// The audit battery behind `repro`: recomputes the published worked
// examples, records VERIFIED/DISCREPANT per claim.
std::vector<DiscrepancyRow> audit_claims(int example);

nlohmann::json to_json(const CaseLabel& label);
nlohmann::json to_json(const PbwReport& pbw);
nlohmann::json to_json(const LiberateResult& res);
nlohmann::json to_json(const HamiltonReport& rep, const GeneratorSet& gens);
nlohmann::json to_json(const FlowCheck& check);
nlohmann::json to_json(const DiscrepancyRow& row);

}  // namespace liberator
