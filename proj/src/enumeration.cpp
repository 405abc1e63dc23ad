#include "enumeration.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ostream>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "error.hpp"
#include "subwords.hpp"

namespace simcon {

namespace {

using Clock = std::chrono::steady_clock;

// Letters live in single bytes inside the engine; the config validator
// rejects alphabets that would not fit.
using ByteWord = std::string;

constexpr std::uint32_t kMaxEngineAlphabet = 255;

// Rough per-entry cost of a node in the key store / a survivor carried to
// the next generation, on top of the payload bytes themselves.
constexpr std::uint64_t kStoreNodeOverhead = 64;
constexpr std::uint64_t kSurvivorOverhead = 96;

Word to_word(ByteWord const& bytes) {
  Word w;
  for (unsigned char c : bytes) w.push_back(static_cast<letter_t>(c));
  return w;
}

struct Survivor {
  ByteWord word;
  std::string blob;
  SubwordProfile state;
};

struct WorkerTask {
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::vector<Survivor> survivors;
};

struct GenerationScan {
  std::vector<ByteWord> const* words;
  std::vector<SubwordProfile> const* states;
  std::unordered_set<std::string> const* suffixes;
  std::unordered_set<std::string> const* seen;
  std::uint32_t k = 0;
  KeyMode mode = KeyMode::exact;
  bool has_deadline = false;
  Clock::time_point deadline;
  std::atomic<bool>* out_of_time = nullptr;
};

// Scans one contiguous slice of the parent generation.  Parents are sorted,
// letters are tried in increasing order and slices are stitched back
// together in index order, so the concatenated survivor stream is exactly
// the lexicographic candidate order no matter how many workers ran.
void scan_slice(GenerationScan const& scan, WorkerTask& task) {
  std::unordered_set<std::string> local;
  std::uint64_t ticks = 0;
  for (std::size_t i = task.lo; i < task.hi; ++i) {
    ByteWord const& parent = (*scan.words)[i];
    for (std::uint32_t a = 1; a <= scan.k; ++a) {
      if (scan.has_deadline && (++ticks & 0xff) == 0) {
        if (scan.out_of_time->load(std::memory_order_relaxed) ||
            Clock::now() > scan.deadline) {
          scan.out_of_time->store(true, std::memory_order_relaxed);
          return;
        }
      }
      ByteWord candidate = parent;
      candidate.push_back(static_cast<char>(a));
      // Both halves of a minimal word are minimal, so the length-l suffix
      // must itself be a known representative.
      if (!scan.suffixes->count(candidate.substr(1))) continue;
      SubwordProfile state = (*scan.states)[i];
      state.append(static_cast<letter_t>(a));
      std::string blob =
          key_from_profile(state, to_word(candidate), scan.mode)
              .storage_blob();
      if (scan.seen->count(blob) || local.count(blob)) continue;
      local.insert(blob);
      task.survivors.push_back(
          Survivor{std::move(candidate), std::move(blob), std::move(state)});
    }
  }
}

std::uint64_t generation_bytes(std::vector<ByteWord> const& words,
                               std::vector<SubwordProfile> const& states) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < words.size(); ++i)
    total += words[i].size() + states[i].memory_bytes() + kSurvivorOverhead;
  return total;
}

EnumerationReport run_engine(EnumerationConfig const& config,
                             RepresentativeSink const* sink) {
  config.validate();
  auto started = Clock::now();
  bool has_deadline = config.time_budget_seconds > 0.0;
  auto deadline =
      started + std::chrono::duration_cast<Clock::duration>(
                    std::chrono::duration<double>(config.time_budget_seconds));

  Alphabet alphabet(config.k);
  KeyBudget key_budget{config.profile_bit_budget};
  std::uint32_t const cap_length = config.effective_max_length();
  std::uint32_t workers = config.worker_count
                              ? config.worker_count
                              : std::max(1u, std::thread::hardware_concurrency());

  EnumerationReport report;
  report.k = config.k;
  report.n = config.n;
  report.mode = config.mode;

  std::unordered_set<std::string> seen;
  std::uint64_t store_bytes = 0;
  auto remember = [&](std::string const& blob) {
    store_bytes += blob.size() + kStoreNodeOverhead;
    seen.insert(blob);
  };

  std::vector<ByteWord> words;
  std::vector<SubwordProfile> states;
  {
    SubwordProfile root(alphabet, config.n, key_budget);
    remember(key_from_profile(root, Word{}, config.mode).storage_blob());
    words.push_back(ByteWord{});
    states.push_back(std::move(root));
  }
  report.per_length.push_back(1);
  if (sink) (*sink)(Word{}, 0);

  report.termination = Termination::exhausted;
  std::uint64_t peak_bytes = store_bytes + generation_bytes(words, states);

  for (std::uint32_t length = 0;; ++length) {
    if (length + 1 > cap_length) {
      report.termination = Termination::length_cap_hit;
      break;
    }
    std::uint64_t parent_bytes = generation_bytes(words, states);
    if (config.memory_budget_bytes &&
        store_bytes + parent_bytes * (1 + config.k) >
            config.memory_budget_bytes) {
      report.termination = Termination::budget_exceeded;
      break;
    }

    std::unordered_set<std::string> suffixes(words.begin(), words.end());
    std::atomic<bool> out_of_time{false};
    GenerationScan scan;
    scan.words = &words;
    scan.states = &states;
    scan.suffixes = &suffixes;
    scan.seen = &seen;
    scan.k = config.k;
    scan.mode = config.mode;
    scan.has_deadline = has_deadline;
    scan.deadline = deadline;
    scan.out_of_time = &out_of_time;

    std::size_t slice_count =
        std::min<std::size_t>(workers, std::max<std::size_t>(words.size(), 1));
    if (words.size() < 1024) slice_count = 1;  // not worth the thread churn
    std::vector<WorkerTask> tasks(slice_count);
    std::size_t chunk = (words.size() + slice_count - 1) / slice_count;
    for (std::size_t s = 0; s < slice_count; ++s) {
      tasks[s].lo = std::min(words.size(), s * chunk);
      tasks[s].hi = std::min(words.size(), (s + 1) * chunk);
    }
    if (slice_count == 1) {
      scan_slice(scan, tasks[0]);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(slice_count);
      for (auto& task : tasks)
        pool.emplace_back([&scan, &task] { scan_slice(scan, task); });
      for (auto& t : pool) t.join();
    }
    if (out_of_time.load()) {
      report.termination = Termination::budget_exceeded;
      break;
    }

    // Stitch the slices back together; the first candidate claiming a key
    // is the shortlex-least member of a brand-new class.
    std::vector<ByteWord> next_words;
    std::vector<SubwordProfile> next_states;
    for (auto& task : tasks) {
      for (auto& survivor : task.survivors) {
        if (seen.count(survivor.blob)) continue;
        remember(survivor.blob);
        next_words.push_back(std::move(survivor.word));
        next_states.push_back(std::move(survivor.state));
      }
    }
    if (next_words.empty()) {
      report.termination = Termination::exhausted;
      break;
    }
    report.per_length.push_back(next_words.size());
    report.max_rep_length = length + 1;
    if (sink)
      for (auto const& w : next_words) (*sink)(to_word(w), length + 1);
    words = std::move(next_words);
    states = std::move(next_states);
    peak_bytes = std::max(
        peak_bytes, store_bytes + parent_bytes + generation_bytes(words, states));
  }

  report.total_classes = 0;
  for (std::uint64_t c : report.per_length)
    report.total_classes += mpz_class(static_cast<unsigned long>(c));
  report.peak_key_store_entries = seen.size();
  report.peak_key_store_bytes = peak_bytes;
  if (config.mode == KeyMode::fingerprint) {
    double entries = static_cast<double>(seen.size());
    report.collision_bound = std::ldexp(0.5 * entries * (entries - 1), -128);
  }
  report.duration_seconds =
      std::chrono::duration<double>(Clock::now() - started).count();
  return report;
}

}  // namespace

void EnumerationConfig::validate() const {
  if (k == 0) throw input_error("alphabet size must be at least 1");
  if (k > kMaxEngineAlphabet)
    throw input_error("enumeration supports alphabets up to 255 letters");
  if (time_budget_seconds < 0.0)
    throw input_error("time budget must be non-negative");
}

std::uint32_t EnumerationConfig::effective_max_length() const {
  if (max_length) return max_length;
  // Generous safety cap; every complete run observed stops well below it,
  // and hitting it is reported honestly as a truncation.
  return std::max<std::uint32_t>(1, 4 * n * k);
}

char const* termination_name(Termination t) {
  switch (t) {
    case Termination::exhausted: return "exhausted";
    case Termination::budget_exceeded: return "budget-exceeded";
    case Termination::length_cap_hit: return "length-cap-hit";
  }
  return "unknown";
}

std::string EnumerationReport::to_json(bool include_timings) const {
  nlohmann::ordered_json doc;
  doc["k"] = k;
  doc["n"] = n;
  doc["mode"] = mode == KeyMode::exact ? "exact" : "fingerprint";
  doc["classes"] = total_classes.get_str();
  doc["exact"] = exact();
  doc["termination"] = termination_name(termination);
  doc["per_length"] = per_length;
  doc["max_representative_length"] = max_rep_length;
  doc["key_store"] = {{"entries", peak_key_store_entries},
                      {"peak_bytes", peak_key_store_bytes}};
  if (mode == KeyMode::fingerprint)
    doc["collision_bound"] = collision_bound;
  if (include_timings) doc["duration_seconds"] = duration_seconds;
  return doc.dump(2);
}

EnumerationReport count_classes(EnumerationConfig const& config) {
  EnumerationReport report = run_engine(config, nullptr);
  if (config.mode == KeyMode::fingerprint && config.cross_check) {
    EnumerationConfig shadow = config;
    shadow.mode = KeyMode::exact;
    shadow.cross_check = false;
    EnumerationReport exact_report = run_engine(shadow, nullptr);
    if (exact_report.per_length != report.per_length)
      throw internal_error(
          "fingerprint run diverges from exact run: digest collision");
  }
  return report;
}

EnumerationReport enumerate_minimal(EnumerationConfig const& config,
                                    RepresentativeSink const& sink) {
  return run_engine(config, &sink);
}

EnumerationReport dump_representatives(EnumerationConfig const& config,
                                       std::ostream& out) {
  bool first = true;
  std::uint32_t last_length = 0;
  RepresentativeSink sink = [&](Word const& w, std::uint32_t length) {
    if (!first && length != last_length) out << '\n';
    out << to_text(w) << '\n';
    first = false;
    last_length = length;
  };
  return enumerate_minimal(config, sink);
}

std::string OracleReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["passed"] = passed;
  doc["oracle_classes"] = oracle_classes;
  doc["engine_classes"] = engine_classes.get_str();
  doc["checked_up_to_length"] = checked_up_to_length;
  if (!failure.empty()) doc["failure"] = failure;
  return doc.dump(2);
}

OracleReport verify_against_oracle(std::uint32_t k, std::uint32_t n,
                                   OracleLimits limits) {
  EnumerationConfig config;
  config.k = k;
  config.n = n;
  config.mode = KeyMode::exact;
  config.worker_count = 1;

  std::unordered_set<std::string> engine_reps;
  std::uint32_t engine_max_length = 0;
  RepresentativeSink sink = [&](Word const& w, std::uint32_t length) {
    engine_reps.insert(to_text(w));
    engine_max_length = std::max(engine_max_length, length);
  };
  EnumerationReport engine = enumerate_minimal(config, sink);
  if (!engine.exact())
    throw internal_error("oracle comparison needs a complete engine run");

  OracleReport report;
  report.engine_classes = engine.total_classes;
  std::uint32_t horizon = engine_max_length + 1;
  report.checked_up_to_length = horizon;

  // Budget the sweep before starting it: sum of k^l for l <= horizon.
  std::uint64_t sweep = 0;
  std::uint64_t power = 1;
  for (std::uint32_t l = 0; l <= horizon; ++l) {
    sweep += power;
    if (sweep > limits.max_words)
      throw budget_error("oracle word sweep exceeds its budget");
    if (l < horizon && power > limits.max_words / std::max(k, 1u))
      throw budget_error("oracle word sweep exceeds its budget");
    power *= k;
  }

  // Partition every word up to the horizon by its full subword set, keeping
  // the first (hence shortlex-least) member and discovery length per class.
  struct ClassInfo {
    std::string first_word;
    std::uint32_t first_length;
  };
  std::unordered_map<std::string, ClassInfo> classes;
  for (std::uint32_t length = 0; length <= horizon; ++length) {
    std::vector<letter_t> digits(length, 1);
    while (true) {
      Word w;
      for (letter_t d : digits) w.push_back(d);
      std::string canon = subwords_up_to(w, n).canonical_serialization();
      if (!classes.count(canon))
        classes.emplace(std::move(canon), ClassInfo{to_text(w), length});
      if (length == 0) break;
      std::size_t pos = length;
      while (pos > 0 && digits[pos - 1] == k) digits[--pos] = 1;
      if (pos == 0) break;
      ++digits[pos - 1];
    }
  }

  report.oracle_classes = classes.size();
  auto fail = [&](std::string message) {
    report.passed = false;
    report.failure = std::move(message);
    return report;
  };

  for (auto const& [canon, info] : classes) {
    if (info.first_length > engine_max_length)
      return fail("class first reached beyond the engine's longest "
                  "representative, so the stopping rule is unsound");
    if (!engine_reps.count(info.first_word))
      return fail("shortlex-least member '" + info.first_word +
                  "' is missing from the engine's representatives");
  }
  if (classes.size() != engine_reps.size())
    return fail("engine emitted " + std::to_string(engine_reps.size()) +
                " representatives for " + std::to_string(classes.size()) +
                " classes");
  if (mpz_class(static_cast<unsigned long>(classes.size())) !=
      engine.total_classes)
    return fail("engine count disagrees with the brute-force partition");

  report.passed = true;
  return report;
}

}  // namespace simcon
