#ifndef SIMCON_ENUMERATION_HPP_
#define SIMCON_ENUMERATION_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "congruence.hpp"
#include "word.hpp"

namespace simcon {

// Exact class counting by listing minimal representatives.  Every class has
// a unique shortest, lexicographically-least member; if a concatenation is
// minimal then so are both parts, which gives the generation scheme:
//
//   G_0 = { empty word }.  Candidates of length l+1 are u*a with u in G_l;
//   a candidate is skipped unless its length-l suffix is minimal too, and
//   survives only when its congruence key was never seen before.  Taking
//   candidates in lexicographic order makes the first word reaching a new
//   key the shortlex-least of its class.  The first empty generation proves
//   that no longer minimal representative exists, so the count is complete.

struct EnumerationConfig {
  std::uint32_t k = 2;
  std::uint32_t n = 2;
  KeyMode mode = KeyMode::exact;
  std::uint32_t max_length = 0;   // 0: default safety cap of 4*n*k
  std::uint32_t worker_count = 1;
  std::uint64_t memory_budget_bytes = 0;  // 0: unlimited
  double time_budget_seconds = 0.0;       // 0: unlimited
  std::uint64_t profile_bit_budget = 1ull << 25;
  // Fingerprint runs only: repeat the run with exact keys and require
  // identical counts, turning a digest collision into a hard error.
  bool cross_check = false;

  void validate() const;
  std::uint32_t effective_max_length() const;
};

enum class Termination { exhausted, budget_exceeded, length_cap_hit };

char const* termination_name(Termination t);

struct EnumerationReport {
  std::uint32_t k = 0;
  std::uint32_t n = 0;
  KeyMode mode = KeyMode::exact;
  mpz_class total_classes;
  std::vector<std::uint64_t> per_length;
  std::uint32_t max_rep_length = 0;
  Termination termination = Termination::exhausted;
  double duration_seconds = 0.0;
  std::uint64_t peak_key_store_entries = 0;
  std::uint64_t peak_key_store_bytes = 0;
  double collision_bound = 0.0;  // fingerprint runs only

  // Counts are exact only for a run that proved exhaustion; otherwise they
  // are a lower bound and must be labeled as such.
  bool exact() const { return termination == Termination::exhausted; }

  // Volatile fields (wall-clock duration) are withheld unless requested so
  // that equal runs serialize byte-identically.
  std::string to_json(bool include_timings = false) const;
};

// Sink receives each minimal representative once, grouped by increasing
// length and lexicographically ordered within a length, independent of
// worker_count.
using RepresentativeSink =
    std::function<void(Word const&, std::uint32_t length)>;

EnumerationReport count_classes(EnumerationConfig const& config);
EnumerationReport enumerate_minimal(EnumerationConfig const& config,
                                    RepresentativeSink const& sink);

// One representative per line in text form, grouped by length with a blank
// line between groups (the length-0 group is a single empty line).
EnumerationReport dump_representatives(EnumerationConfig const& config,
                                       std::ostream& out);

struct OracleLimits {
  std::uint64_t max_words = 1ull << 22;
};

struct OracleReport {
  bool passed = false;
  std::uint64_t oracle_classes = 0;
  mpz_class engine_classes;
  std::uint32_t checked_up_to_length = 0;
  std::string failure;  // empty when passed

  std::string to_json() const;
};

// Recomputes the class count by brute force: partition every word up to one
// letter beyond the engine's longest representative using full subword-set
// equality, then confirm the partition and the engine agree class by class
// (count, unique representative per class, shortlex-least choice) and that
// the extra length introduces no new class.
OracleReport verify_against_oracle(std::uint32_t k, std::uint32_t n,
                                   OracleLimits limits = {});

}  // namespace simcon

#endif  // SIMCON_ENUMERATION_HPP_
