#ifndef SIMCON_VERIFY_HPP_
#define SIMCON_VERIFY_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace simcon {

// Randomized property suites exercising the lemma-level facts the rest of
// the code relies on.  Sampling is fully deterministic for a given seed:
// the generator is seeded per suite from (seed, suite name), so suites can
// run alone or together with identical outcomes.

struct SuiteConfig {
  std::uint64_t seed = 0x51'4d'43'53;  // fixed default, overridable
  std::uint32_t samples = 1000;
  std::uint32_t max_len = 24;  // length ceiling for sampled words
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::uint64_t samples_run = 0;
  std::uint64_t failures = 0;
  std::string first_failure;  // description of the first counterexample
  double duration_seconds = 0.0;
};

struct SuiteReport {
  std::vector<SuiteResult> suites;
  bool all_passed() const;
  // Durations are withheld unless asked for, keeping equal runs
  // byte-identical.
  std::string to_json(bool include_timings = false) const;
  std::string to_text() const;
};

std::vector<std::string> suite_names();

// Runs one named suite; unknown names raise an input error.
SuiteResult run_suite(std::string const& name, SuiteConfig const& config);

// Runs every suite in the order of suite_names().
SuiteReport run_property_suites(SuiteConfig const& config);

}  // namespace simcon

#endif  // SIMCON_VERIFY_HPP_
