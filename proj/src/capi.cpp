#include "simcon/simcon.h"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "bounds.hpp"
#include "congruence.hpp"
#include "enumeration.hpp"
#include "error.hpp"
#include "richness.hpp"
#include "subwords.hpp"
#include "verify.hpp"
#include "word.hpp"

struct simcon_word {
  simcon::Word word;
  std::uint32_t k = 1;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(std::string const& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
simcon_status guarded(Fn&& fn) {
  try {
    fn();
    return SIMCON_OK;
  } catch (simcon::input_error const& e) {
    g_last_error = e.what();
    return SIMCON_ERR_INPUT;
  } catch (simcon::budget_error const& e) {
    g_last_error = e.what();
    return SIMCON_ERR_BUDGET;
  } catch (simcon::internal_error const& e) {
    g_last_error = e.what();
    return SIMCON_ERR_INTERNAL;
  } catch (std::bad_alloc const&) {
    g_last_error = "out of memory";
    return SIMCON_ERR_BUDGET;
  } catch (std::exception const& e) {
    g_last_error = e.what();
    return SIMCON_ERR_INTERNAL;
  }
}

simcon_status need(bool ok, char const* message) {
  if (ok) return SIMCON_OK;
  g_last_error = message;
  return SIMCON_ERR_INPUT;
}

simcon::EnumerationConfig to_config(simcon_enum_config const& cfg) {
  simcon::EnumerationConfig out;
  out.k = cfg.k;
  out.n = cfg.n;
  out.mode = cfg.use_fingerprint ? simcon::KeyMode::fingerprint
                                 : simcon::KeyMode::exact;
  out.cross_check = cfg.cross_check != 0;
  out.max_length = cfg.max_length;
  out.worker_count = cfg.worker_count;
  out.memory_budget_bytes = cfg.memory_budget_bytes;
  out.time_budget_seconds = cfg.time_budget_seconds;
  return out;
}

// A finished engine run maps to OK when it proved exhaustion and to the
// budget status otherwise (the JSON still carries the partial counts).
simcon_status finish_enum(simcon::EnumerationReport const& report,
                          int include_timings, char** json_out) {
  if (json_out) *json_out = dup_string(report.to_json(include_timings != 0));
  if (report.termination == simcon::Termination::exhausted) return SIMCON_OK;
  g_last_error = std::string("enumeration stopped early (") +
                 simcon::termination_name(report.termination) +
                 "); counts are a lower bound";
  return SIMCON_ERR_BUDGET;
}

nlohmann::ordered_json factorization_json(simcon::RichFactorization const& f) {
  nlohmann::ordered_json doc;
  doc["richness"] = f.richness();
  auto pairs = nlohmann::ordered_json::array();
  for (auto const& pr : f.pairs) {
    nlohmann::ordered_json row;
    row["segment"] = simcon::to_text(pr.segment);
    row["separator"] = simcon::to_text(simcon::Word({pr.separator}));
    pairs.push_back(std::move(row));
  }
  doc["pairs"] = std::move(pairs);
  doc["tail"] = simcon::to_text(f.tail);
  return doc;
}

}  // namespace

extern "C" {

const char* simcon_version(void) { return "simcon 1.0.0"; }

const char* simcon_last_error(void) { return g_last_error.c_str(); }

void simcon_string_free(char* s) { std::free(s); }

simcon_status simcon_word_parse(const char* text, uint32_t k,
                                simcon_word** out) {
  if (simcon_status s = need(text && out, "text and out must be non-null"))
    return s;
  return guarded([&] {
    std::uint32_t effective_k = k;
    if (effective_k == 0) {
      // Infer the alphabet: parse over the widest supported text alphabet,
      // then shrink to the largest letter actually used.
      simcon::Word probe = simcon::parse_word(text, simcon::Alphabet(26));
      effective_k = std::max<std::uint32_t>(1, probe.max_letter());
    }
    simcon::Word w = simcon::parse_word(text, simcon::Alphabet(effective_k));
    *out = new simcon_word{std::move(w), effective_k};
  });
}

void simcon_word_free(simcon_word* w) { delete w; }

simcon_status simcon_word_text(const simcon_word* w, char** out) {
  if (simcon_status s = need(w && out, "word and out must be non-null"))
    return s;
  return guarded([&] { *out = dup_string(simcon::to_text(w->word)); });
}

size_t simcon_word_length(const simcon_word* w) {
  return w ? w->word.length() : 0;
}

uint32_t simcon_word_alphabet(const simcon_word* w) { return w ? w->k : 0; }

simcon_status simcon_equivalent(const simcon_word* x, const simcon_word* y,
                                uint32_t n, int* out) {
  if (simcon_status s = need(x && y && out, "arguments must be non-null"))
    return s;
  if (simcon_status s = need(x->k == y->k, "words use different alphabets"))
    return s;
  return guarded([&] {
    *out = simcon::equivalent(x->word, y->word, n, simcon::Alphabet(x->k)) ? 1
                                                                           : 0;
  });
}

simcon_status simcon_distinguish(const simcon_word* x, const simcon_word* y,
                                 uint32_t n, int* equivalent_out,
                                 char** witness_out, int* witness_in_first) {
  if (simcon_status s = need(x && y && equivalent_out && witness_out,
                             "arguments must be non-null"))
    return s;
  if (simcon_status s = need(x->k == y->k, "words use different alphabets"))
    return s;
  return guarded([&] {
    simcon::Distinction d =
        simcon::distinguish(x->word, y->word, n, simcon::Alphabet(x->k));
    *equivalent_out = d.equivalent ? 1 : 0;
    *witness_out = d.equivalent ? nullptr : dup_string(simcon::to_text(d.witness));
    if (witness_in_first) *witness_in_first = d.witness_in_first ? 1 : 0;
  });
}

simcon_status simcon_subwords(const simcon_word* x, uint32_t n, int as_json,
                              char** out) {
  if (simcon_status s = need(x && out, "arguments must be non-null")) return s;
  return guarded([&] {
    simcon::SubwordSet set = simcon::subwords_up_to(x->word, n);
    if (as_json) {
      nlohmann::ordered_json doc;
      doc["word"] = simcon::to_text(x->word);
      doc["n"] = n;
      auto arr = nlohmann::ordered_json::array();
      for (auto const& m : set.members()) arr.push_back(simcon::to_text(m));
      doc["subwords"] = std::move(arr);
      doc["count"] = set.size();
      *out = dup_string(doc.dump(2));
    } else {
      std::ostringstream text;
      for (auto const& m : set.members()) text << simcon::to_text(m) << '\n';
      *out = dup_string(text.str());
    }
  });
}

simcon_status simcon_minimal_representative(const simcon_word* x, uint32_t n,
                                            char** out, int* was_minimal) {
  if (simcon_status s = need(x && out, "arguments must be non-null")) return s;
  return guarded([&] {
    simcon::Word rep = simcon::minimal_representative(x->word, n);
    if (was_minimal) *was_minimal = rep == x->word ? 1 : 0;
    *out = dup_string(simcon::to_text(rep));
  });
}

simcon_status simcon_richness(const simcon_word* x, uint64_t* out) {
  if (simcon_status s = need(x && out, "arguments must be non-null")) return s;
  return guarded([&] {
    *out = simcon::richness(x->word, simcon::Alphabet(x->k));
  });
}

simcon_status simcon_factorization(const simcon_word* x, int as_json,
                                   char** out) {
  if (simcon_status s = need(x && out, "arguments must be non-null")) return s;
  return guarded([&] {
    auto f = simcon::rich_factorization(x->word, simcon::Alphabet(x->k));
    if (as_json) {
      *out = dup_string(factorization_json(f).dump(2));
    } else {
      *out = dup_string(simcon::factorization_to_text(f));
    }
  });
}

void simcon_enum_config_init(simcon_enum_config* cfg, uint32_t k, uint32_t n) {
  if (!cfg) return;
  *cfg = simcon_enum_config{};
  cfg->k = k;
  cfg->n = n;
  cfg->worker_count = 1;
}

simcon_status simcon_count(const simcon_enum_config* cfg, int include_timings,
                           char** json_out) {
  if (simcon_status s = need(cfg && json_out, "arguments must be non-null"))
    return s;
  simcon_status status = SIMCON_OK;
  simcon_status run = guarded([&] {
    simcon::EnumerationReport report = simcon::count_classes(to_config(*cfg));
    status = finish_enum(report, include_timings, json_out);
  });
  return run != SIMCON_OK ? run : status;
}

simcon_status simcon_enumerate(const simcon_enum_config* cfg,
                               simcon_rep_callback cb, void* user,
                               int include_timings, char** json_out) {
  if (simcon_status s = need(cfg && cb, "config and callback must be non-null"))
    return s;
  simcon_status status = SIMCON_OK;
  simcon_status run = guarded([&] {
    simcon::RepresentativeSink sink = [&](simcon::Word const& w,
                                          std::uint32_t length) {
      std::string text = simcon::to_text(w);
      cb(text.c_str(), length, user);
    };
    simcon::EnumerationReport report =
        simcon::enumerate_minimal(to_config(*cfg), sink);
    status = finish_enum(report, include_timings, json_out);
  });
  return run != SIMCON_OK ? run : status;
}

simcon_status simcon_verify_oracle(uint32_t k, uint32_t n, char** json_out,
                                   int* passed) {
  return guarded([&] {
    simcon::OracleReport report = simcon::verify_against_oracle(k, n);
    if (passed) *passed = report.passed ? 1 : 0;
    if (json_out) *json_out = dup_string(report.to_json());
  });
}

simcon_status simcon_bounds(uint32_t k, uint32_t n, const char* which,
                            const char* exact_decimal, int as_json,
                            char** out) {
  if (simcon_status s = need(out != nullptr, "out must be non-null")) return s;
  std::string selector = which ? which : "all";
  return guarded([&] {
    simcon::CountTable const* table = &simcon::CountTable::embedded();
    simcon::CountTable augmented;
    if (exact_decimal) {
      augmented = simcon::CountTable::embedded();
      augmented.set(k, n,
                    simcon::TableEntry{mpz_class(exact_decimal), true,
                                       simcon::Provenance::computed});
      table = &augmented;
    }
    std::vector<simcon::BoundsReport> reports;
    if (selector == "all") {
      reports = simcon::all_bounds(k, n, *table);
    } else if (selector == "naive") {
      reports = simcon::naive_bounds(k, n, *table);
    } else if (selector == "kppps") {
      reports = simcon::kppps_bounds(k, n, *table);
    } else if (selector == "main") {
      reports = simcon::main_bounds(k, n, *table);
    } else if (selector == "prop3") {
      reports = simcon::prop3_report(k, n, *table);
    } else if (selector == "prop6") {
      reports = simcon::prop6_report(k, n, *table);
    } else if (selector == "eq5") {
      reports = simcon::c2_upper_report(k, n, *table);
    } else if (selector == "recurrences") {
      reports = simcon::kppps_recurrence_check(*table);
    } else {
      throw simcon::input_error("unknown bounds selector: " + selector);
    }
    *out = dup_string(as_json ? simcon::bounds_to_json(reports)
                              : simcon::bounds_to_text(reports));
  });
}

simcon_status simcon_table_csv(char** out) {
  if (simcon_status s = need(out != nullptr, "out must be non-null")) return s;
  return guarded(
      [&] { *out = dup_string(simcon::CountTable::embedded().to_csv()); });
}

simcon_status simcon_table_check(uint32_t worker_count,
                                 double per_cell_seconds,
                                 uint64_t memory_budget_bytes,
                                 char** csv_out, uint32_t* mismatches) {
  if (simcon_status s = need(csv_out != nullptr, "csv_out must be non-null"))
    return s;
  return guarded([&] {
    std::ostringstream csv;
    csv << "k,n,reference,reference_kind,computed,computed_state,match\n";
    std::uint32_t bad = 0;
    for (auto const& [kn, entry] :
         simcon::CountTable::embedded().sorted_entries()) {
      auto [k, n] = kn;
      simcon::EnumerationConfig cfg;
      cfg.k = k;
      cfg.n = n;
      cfg.worker_count = worker_count;
      cfg.memory_budget_bytes = memory_budget_bytes;
      cfg.time_budget_seconds = per_cell_seconds;

      std::string computed = "";
      std::string state = "skipped";
      std::string match = "skipped";
      try {
        simcon::EnumerationReport report = simcon::count_classes(cfg);
        computed = report.total_classes.get_str();
        if (report.exact()) {
          state = "exhausted";
          if (entry.exact)
            match = report.total_classes == entry.value ? "match" : "mismatch";
          else
            match = report.total_classes >= entry.value ? "consistent"
                                                        : "mismatch";
        } else {
          state = simcon::termination_name(report.termination);
          // A truncated run yields a lower bound; it can only contradict an
          // exact reference by exceeding it.
          if (entry.exact && report.total_classes > entry.value)
            match = "mismatch";
          else
            match = "consistent";
        }
      } catch (simcon::budget_error const&) {
        // cell not attemptable within budget; leave as skipped
      }
      if (match == "mismatch") ++bad;
      csv << k << ',' << n << ',' << entry.value.get_str() << ','
          << (entry.exact ? "exact" : "lower-bound") << ',' << computed << ','
          << state << ',' << match << '\n';
    }
    if (mismatches) *mismatches = bad;
    *csv_out = dup_string(csv.str());
  });
}

simcon_status simcon_verify_suites(const char* suites, uint64_t seed,
                                   uint32_t samples, uint32_t max_len,
                                   int as_json, int include_timings,
                                   char** out, int* all_passed) {
  if (simcon_status s = need(out != nullptr, "out must be non-null")) return s;
  return guarded([&] {
    simcon::SuiteConfig cfg;
    cfg.seed = seed;
    if (samples) cfg.samples = samples;
    if (max_len) cfg.max_len = max_len;
    simcon::SuiteReport report;
    if (!suites || !*suites) {
      report = simcon::run_property_suites(cfg);
    } else {
      std::string list = suites;
      std::size_t pos = 0;
      while (pos <= list.size()) {
        std::size_t comma = list.find(',', pos);
        std::string name = list.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!name.empty()) report.suites.push_back(simcon::run_suite(name, cfg));
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      if (report.suites.empty())
        throw simcon::input_error("no suites selected");
    }
    if (all_passed) *all_passed = report.all_passed() ? 1 : 0;
    *out = dup_string(as_json ? report.to_json(include_timings != 0)
                              : report.to_text());
  });
}

}  // extern "C"
