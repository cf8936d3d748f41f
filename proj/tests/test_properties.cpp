// Randomized invariant suites, 1000 instances each with fixed seeds.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "property_suites.hpp"

using namespace propsuite;

namespace {
constexpr std::size_t kInstances = 1000;
}

TEST_CASE("normal forms are idempotent") {
  Rng rng(0xC0FFEE01);
  const SuiteStats s = nf_idempotence(rng, kInstances);
  CHECK(s.checked == kInstances);
  CHECK(s.failed == 0);
  // out-of-scope instances (cycling random systems) must stay rare
  CHECK(s.skipped < kInstances / 10);
}

TEST_CASE("normal forms are multiplicative through the quotient") {
  Rng rng(0xC0FFEE02);
  const SuiteStats s = nf_multiplicativity(rng, kInstances);
  CHECK(s.checked == kInstances);
  CHECK(s.failed == 0);
  CHECK(s.skipped < kInstances / 10);
}

TEST_CASE("derivations satisfy the Leibniz rule") {
  Rng rng(0xC0FFEE03);
  const SuiteStats s = leibniz(rng, kInstances);
  CHECK(s.checked == kInstances);
  CHECK(s.failed == 0);
}

TEST_CASE("the flow acts as an automorphism on preserved quotients") {
  Rng rng(0xC0FFEE04);
  const SuiteStats s = flow_automorphism(rng, kInstances, 6);
  CHECK(s.checked == kInstances);
  CHECK(s.failed == 0);
}

TEST_CASE("structured families have PBW dimensions") {
  Rng rng(0xC0FFEE05);
  const SuiteStats s = pbw_dimensions(rng, kInstances, 4);
  CHECK(s.checked == kInstances);
  CHECK(s.failed == 0);
}
