// End-to-end CLI tests: each case shells out to the liberator binary named
// by the LIBERATOR_BIN environment variable and inspects the JSON report
// and exit code.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

using nlohmann::json;

namespace {

std::string binary() {
  const char* bin = std::getenv("LIBERATOR_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "LIBERATOR_BIN must point at the CLI");
  return bin;
}

// Runs `prefix binary args` through the shell, captures stdout+stderr.
std::string run_cli(const std::string& args, int* exit_code,
                    const std::string& env_prefix = "") {
  const std::string cmd = env_prefix + binary() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    out.append(buf.data(), n);
  }
  const int status = pclose(pipe);
  *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

json run_json(const std::string& args, int expected_exit = 0,
              const std::string& env_prefix = "") {
  int code = -1;
  const std::string out = run_cli(args, &code, env_prefix);
  CAPTURE(out);
  CHECK(code == expected_exit);
  return json::parse(out);
}

}  // namespace

TEST_CASE("classify reports the case and resonance set") {
  const json j = run_json("classify --matrix 1,0,0,2");
  CHECK(j["case"]["kind"] == "QuantumPlane");
  CHECK(j["case"]["eigenvalues"] == json::array({"2", "1"}));
  CHECK(j["input"]["convention"] == "rows");
  CHECK(j["input"]["matrix"] == json::array({"1", "0", "0", "2"}));
  // resonance multidegrees of the sorted pair (2, 1)
  CHECK(j["resonance"] == json::parse("[[0,3],[1,1]]"));
}

TEST_CASE("classify honours the maxdeg environment variable") {
  const json j = run_json("classify --matrix 1,0,0,-1", 0,
                          "LIBERATOR_MAXDEG=3 ");
  CHECK(j["resonance"] == json::parse("[[0,0],[1,1]]"));
}

TEST_CASE("classify supports generic-ratio mode") {
  const json j = run_json("classify --matrix 0,1,1,1 --generic-ratio");
  CHECK(j["case"] == "generic-ratio");
  CHECK(j["resonance"] == json::parse("[[1,1]]"));

  // without the flag irrational eigenvalues are an input error
  int code = -1;
  const std::string out = run_cli("classify --matrix 0,1,1,1", &code);
  CHECK(code == 1);
  CHECK(out.find("--generic-ratio") != std::string::npos);
}

TEST_CASE("classify understands the transpose convention") {
  const json j = run_json("classify --matrix 1,1,0,1 --transpose");
  CHECK(j["case"]["kind"] == "JordanBlock");
  CHECK(j["input"]["convention"] == "columns");
}

TEST_CASE("liberate finds the opposite-eigenvalue family") {
  const json j = run_json("liberate --matrix 1,0,0,-1");
  const json& res = j["result"];
  CHECK(res["status"] == "solution-space");
  CHECK(res["dimension"] == 4);
  CHECK(res["case"]["kind"] == "WignerDiagonal");
  REQUIRE(res["solutions"].size() == 4);
  CHECK(res["solutions"][0]["relation"] == "[X,Y] = 1");
  CHECK(res["solutions"][3]["relation"] == "[X,Y] = X^3*Y^3");
  for (const auto& s : res["solutions"]) {
    CHECK(s["flow"]["preserved"] == true);
    CHECK(s["pbw"]["passed"] == true);
  }
}

TEST_CASE("liberate reports proportions for one-dimensional spaces") {
  const json j = run_json(
      "liberate --quad 1,-2,1,1,-2,1 --ansatz quadratic --scan-height 2");
  const json& res = j["result"];
  CHECK(res["dimension"] == 1);
  CHECK(res["proportions"] == "alpha:beta:gamma = 1:-2:1");
  CHECK(res["solutions"][0]["relation"] == "[X,Y] = Y^2 - Y*X - X*Y + X^2");
}

TEST_CASE("liberate --require-solution fails on an empty space") {
  int code = -1;
  run_cli("liberate --quad 1,1,1,1,2,3 --ansatz quadratic --scan-height 2"
          " --require-solution",
          &code);
  CHECK(code == 2);
}

TEST_CASE("hamiltonian solves the canonical pair") {
  const json j =
      run_json("hamiltonian --matrix 1,0,0,-1 --rel '[X,Y] = 1' --maxdeg 2");
  CHECK(j["hamiltonian"]["status"] == "Hamiltonian");
  CHECK(j["hamiltonian"]["h"] == "-1/2*Y*X - 1/2*X*Y");
  CHECK(j["hamiltonian"]["kernel"] == json::array({"1"}));
}

TEST_CASE("hamiltonian reports a bounded negative verdict") {
  int code = -1;
  const std::string out = run_cli(
      "hamiltonian --matrix 1,1,0,1 --rel '[X,Y] = Y^2' --maxdeg 6"
      " --require-solution",
      &code);
  CHECK(code == 2);
  const json j = json::parse(out);
  CHECK(j["hamiltonian"]["status"] == "NotHamiltonianUpToDegree(6)");
}

TEST_CASE("flow-verify confirms the q-commutation relation") {
  const json j = run_json(
      "flow-verify --matrix 1,0,0,-1 --rel '[X,Y] = 3/2 - 1/2*X*Y'"
      " --order 8");
  CHECK(j["flow"]["preserved"] == true);
  CHECK(j["flow"]["order"] == 8);
}

TEST_CASE("flow-verify reports the first failure") {
  int code = -1;
  const std::string out = run_cli(
      "flow-verify --matrix 1,0,0,1 --rel '[X,Y] = 1' --require-solution",
      &code);
  CHECK(code == 2);
  const json j = json::parse(out);
  CHECK(j["flow"]["preserved"] == false);
  CHECK(j["flow"]["failed_order"] == 1);
  CHECK(j["flow"]["witness"] == "2");
}

TEST_CASE("flow-verify accepts a full dynamics text") {
  const json j = run_json(
      "flow-verify --dynamics 'generators X Y\ndX/dt = X\ndY/dt = -Y'"
      " --rel '[X,Y] = 1'");
  CHECK(j["flow"]["preserved"] == true);
}

TEST_CASE("usage errors exit with code 1") {
  int code = -1;
  run_cli("classify --matrix 1,0,0,x", &code);
  CHECK(code == 1);
  run_cli("classify --matrix 1,0,0", &code);
  CHECK(code == 1);
  run_cli("liberate --matrix 1,0,0,1 --quad 1,0,0,0,0,1", &code);
  CHECK(code == 1);
  run_cli("liberate", &code);
  CHECK(code == 1);
  run_cli("frobnicate", &code);
  CHECK(code == 1);
  run_cli("classify --matrix 1,0,0,2 --no-such-flag", &code);
  CHECK(code == 1);
  // a degree-raising relation without a cap is a reduction error
  const std::string out = run_cli(
      "flow-verify --matrix 1,0,0,-1 --rel '[X,Y] = Y^3'", &code);
  CHECK(code == 1);
  CHECK(out.find("error") != std::string::npos);
}

TEST_CASE("help exits cleanly") {
  int code = -1;
  const std::string out = run_cli("--help", &code);
  CHECK(code == 0);
  CHECK(out.find("classify") != std::string::npos);
  CHECK(out.find("repro") != std::string::npos);
}

TEST_CASE("repro audits the published claims") {
  const json full = run_json("repro");
  CHECK(full["discrepancies"].size() == 21);
  CHECK(full["discrepant_count"] == 5);

  const json ex1 = run_json("repro --example 1");
  CHECK(ex1["discrepancies"].size() == 14);
  CHECK(ex1["discrepant_count"] == 2);

  const json ex2 = run_json("repro --example 2");
  CHECK(ex2["discrepancies"].size() == 7);
  CHECK(ex2["discrepant_count"] == 3);

  for (const auto& row : full["discrepancies"]) {
    CHECK((row["verdict"] == "VERIFIED" || row["verdict"] == "DISCREPANT"));
    CHECK(row.contains("claim"));
    CHECK(row.contains("computed"));
    CHECK(row.contains("reference"));
  }
}

TEST_CASE("repro output is byte-identical across runs") {
  int c1 = -1, c2 = -1;
  const std::string first = run_cli("repro", &c1);
  const std::string second = run_cli("repro", &c2);
  CHECK(c1 == 0);
  CHECK(c2 == 0);
  CHECK(first == second);
}
