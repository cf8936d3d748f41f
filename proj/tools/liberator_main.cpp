#include "liberator/parse.hpp"
#include "liberator/report.hpp"

#include <CLI11.hpp>

#include <array>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

namespace {

template <std::size_t N>
std::array<liberator::Rational, N> to_rationals(
    const std::vector<std::string>& parts) {
  std::array<liberator::Rational, N> out;
  for (std::size_t k = 0; k < N; ++k) {
    out[k] = liberator::rational_from_string(parts[k]);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "liberator: finds commutation relations preserved by polynomial "
      "operator dynamics, classifies two-generator linear systems, and "
      "decides whether a preserved relation set is Hamiltonian."};
  app.require_subcommand(1);

  liberator::RunOptions opts;
  std::vector<std::string> matrix_in, quad_in;
  std::string dynamics_text;

  const auto add_matrix = [&](CLI::App* cmd, bool required) {
    auto* o = cmd->add_option(
                     "--matrix", matrix_in,
                     "2x2 coefficient matrix a,b,c,d for dX/dt = a*X + b*Y, "
                     "dY/dt = c*X + d*Y (entries are rationals p or p/q)")
                  ->delimiter(',')
                  ->expected(4);
    if (required) o->required();
  };
  const auto add_quad = [&](CLI::App* cmd) {
    cmd->add_option("--quad", quad_in,
                    "quadratic coefficients a,b,c,d,e,f for dX/dt = a*X^2 + "
                    "b*{X,Y} + c*Y^2, dY/dt = d*X^2 + e*{X,Y} + f*Y^2")
        ->delimiter(',')
        ->expected(6);
  };
  const auto add_dynamics = [&](CLI::App* cmd) {
    cmd->add_option("--dynamics", dynamics_text,
                    "full system text: a 'generators ...' line followed by "
                    "one d<name>/dt = ... equation per generator");
  };
  const auto add_transpose = [&](CLI::App* cmd) {
    cmd->add_flag("--transpose", opts.transpose_convention,
                  "read --matrix in the transposed (columns) convention");
  };
  const auto add_maxdeg = [&](CLI::App* cmd, const char* what) {
    cmd->add_option("--maxdeg", opts.maxdeg, what)
        ->envname("LIBERATOR_MAXDEG");
  };
  const auto add_cap = [&](CLI::App* cmd) {
    cmd->add_option("--cap", opts.cap,
                    "work in the quotient that drops words of degree > CAP");
  };
  const auto add_require = [&](CLI::App* cmd) {
    cmd->add_flag("--require-solution", opts.require_solution,
                  "exit with status 2 when nothing is found");
  };
  const auto add_rel = [&](CLI::App* cmd) {
    cmd->add_option("--rel", opts.relations,
                    "commutation relation \"[X,Y] = f\" (repeatable)");
  };

  CLI::App* classify = app.add_subcommand(
      "classify", "label the resonance case of a linear 2x2 system");
  add_matrix(classify, true);
  add_transpose(classify);
  add_maxdeg(classify, "degree bound for the reported resonance multidegrees");
  classify->add_flag("--generic-ratio", opts.generic_ratio,
                     "report only the multidegrees admissible for every "
                     "eigenvalue ratio");

  CLI::App* liberate = app.add_subcommand(
      "liberate", "search for relation sets preserved by the flow");
  add_matrix(liberate, false);
  add_quad(liberate);
  add_dynamics(liberate);
  add_transpose(liberate);
  liberate
      ->add_option("--ansatz", opts.ansatz,
                   "relation ansatz: resonance, linear, quadratic, or full")
      ->check(CLI::IsMember({"resonance", "linear", "quadratic", "full"}));
  add_maxdeg(liberate, "ansatz degree bound (resonance and full modes)");
  liberate->add_option("--order", opts.order,
                       "flow-derivative order used to verify each solution");
  add_cap(liberate);
  liberate->add_option("--scan-height", opts.scan_height,
                       "coordinate bound for the certified projective scan");
  add_require(liberate);

  CLI::App* hamiltonian = app.add_subcommand(
      "hamiltonian",
      "decide whether the dynamics is generated by one element h");
  add_matrix(hamiltonian, false);
  add_quad(hamiltonian);
  add_dynamics(hamiltonian);
  add_transpose(hamiltonian);
  add_rel(hamiltonian);
  add_maxdeg(hamiltonian, "degree bound for the candidate h");
  add_cap(hamiltonian);
  add_require(hamiltonian);

  CLI::App* flow_verify = app.add_subcommand(
      "flow-verify", "check that relations are preserved along the flow");
  add_matrix(flow_verify, false);
  add_quad(flow_verify);
  add_dynamics(flow_verify);
  add_transpose(flow_verify);
  add_rel(flow_verify);
  flow_verify->add_option("--order", opts.order,
                          "number of flow derivatives to check");
  add_cap(flow_verify);
  add_require(flow_verify);

  CLI::App* repro = app.add_subcommand(
      "repro", "recompute the published worked examples and report "
               "VERIFIED/DISCREPANT per claim");
  repro->add_option("--example", opts.example,
                    "restrict to one worked example (1 or 2; 0 = all)")
      ->check(CLI::Range(0, 2));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  opts.command = app.get_subcommands().front()->get_name();

  try {
    if (!matrix_in.empty()) opts.matrix = to_rationals<4>(matrix_in);
    if (!quad_in.empty()) opts.quad = to_rationals<6>(quad_in);
    if (!dynamics_text.empty()) opts.dynamics_text = dynamics_text;

    const liberator::RunResult result = liberator::run(opts);
    std::cout << result.report.dump(2) << "\n";
    return result.exit_code;
  } catch (const liberator::InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const liberator::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const liberator::ReductionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
