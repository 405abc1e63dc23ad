// Command-line front end.  Talks to the library exclusively through the
// C API so the shared-library surface gets exercised by every invocation.
#include <CLI11.hpp>
#include <json.hpp>

#include <simcon/simcon.h>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

namespace {

struct CommonOpts {
  bool json = false;
  bool timings = false;
  std::uint32_t threads = 1;
  double budget_seconds = 0.0;
  std::uint64_t memory_mb = 0;
};

// Owns a string allocated by the library.
struct CStr {
  char* p = nullptr;
  CStr() = default;
  CStr(CStr const&) = delete;
  CStr& operator=(CStr const&) = delete;
  ~CStr() { simcon_string_free(p); }
  char** out() { return &p; }
  std::string str() const { return p ? p : ""; }
};

struct WordHandle {
  simcon_word* w = nullptr;
  WordHandle() = default;
  WordHandle(WordHandle const&) = delete;
  WordHandle& operator=(WordHandle const&) = delete;
  ~WordHandle() { simcon_word_free(w); }
};

int fail(simcon_status s) {
  std::cerr << "error: " << simcon_last_error() << '\n';
  return static_cast<int>(s);
}

void emit(std::string const& s) {
  std::cout << s;
  if (s.empty() || s.back() != '\n') std::cout << '\n';
}

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_flag("--json", o.json, "emit machine-readable JSON");
  cmd->add_flag("--timings", o.timings,
                "include wall-clock durations in JSON output");
  cmd->add_option("--threads", o.threads,
                  "enumeration worker threads (0 = all cores)")
      ->envname("SIMCON_THREADS");
  cmd->add_option("--budget-seconds", o.budget_seconds,
                  "wall-clock budget; a truncated run is marked inexact");
  cmd->add_option("--memory-mb", o.memory_mb,
                  "key-store memory budget in MiB (0 = unlimited)");
}

int parse_word_arg(std::string const& text, std::uint32_t k, WordHandle& out) {
  if (simcon_status s = simcon_word_parse(text.c_str(), k, &out.w))
    return fail(s);
  return 0;
}

// Parse two words over a shared alphabet: the requested one, or the smallest
// alphabet covering both when k is left at 0.
int parse_word_pair(std::string const& xs, std::string const& ys,
                    std::uint32_t k, WordHandle& x, WordHandle& y) {
  if (k == 0) {
    WordHandle px, py;
    if (int rc = parse_word_arg(xs, 0, px)) return rc;
    if (int rc = parse_word_arg(ys, 0, py)) return rc;
    k = std::max(simcon_word_alphabet(px.w), simcon_word_alphabet(py.w));
  }
  if (int rc = parse_word_arg(xs, k, x)) return rc;
  if (int rc = parse_word_arg(ys, k, y)) return rc;
  return 0;
}

simcon_enum_config make_config(CommonOpts const& common, std::uint32_t k,
                               std::uint32_t n) {
  simcon_enum_config cfg;
  simcon_enum_config_init(&cfg, k, n);
  cfg.worker_count = common.threads;
  cfg.memory_budget_bytes = common.memory_mb * 1024ull * 1024ull;
  cfg.time_budget_seconds = common.budget_seconds;
  return cfg;
}

struct RepFileCtx {
  std::ofstream out;
  bool first = true;
  std::uint32_t last_length = 0;
};

void write_rep(const char* text, uint32_t length, void* user) {
  auto* ctx = static_cast<RepFileCtx*>(user);
  if (!ctx->first && length != ctx->last_length) ctx->out << '\n';
  ctx->out << text << '\n';
  ctx->first = false;
  ctx->last_length = length;
}

struct CountOpts {
  CommonOpts common;
  std::uint32_t k = 2;
  std::uint32_t n = 2;
  std::uint32_t max_length = 0;
  bool fingerprint = false;
  bool cross_check = false;
  std::string emit_reps;
};

int run_count(CountOpts const& o) {
  simcon_enum_config cfg = make_config(o.common, o.k, o.n);
  cfg.use_fingerprint = o.fingerprint ? 1 : 0;
  cfg.cross_check = o.cross_check ? 1 : 0;
  cfg.max_length = o.max_length;

  CStr json;
  simcon_status s;
  if (!o.emit_reps.empty()) {
    RepFileCtx ctx;
    ctx.out.open(o.emit_reps);
    if (!ctx.out) {
      std::cerr << "error: cannot open " << o.emit_reps << " for writing\n";
      return 1;
    }
    s = simcon_enumerate(&cfg, &write_rep, &ctx, o.common.timings ? 1 : 0,
                         json.out());
  } else {
    s = simcon_count(&cfg, o.common.timings ? 1 : 0, json.out());
  }
  if (s != SIMCON_OK && s != SIMCON_ERR_BUDGET) return fail(s);
  if (!json.p) return fail(s);  // stopped before producing a report

  if (o.common.json) {
    emit(json.str());
  } else {
    auto doc = nlohmann::json::parse(json.str());
    std::string classes = doc.at("classes").get<std::string>();
    if (doc.at("exact").get<bool>()) {
      std::cout << classes << '\n';
    } else {
      std::cout << classes << " (inexact: "
                << doc.at("termination").get<std::string>() << ")\n";
    }
  }
  if (s == SIMCON_ERR_BUDGET)
    std::cerr << "warning: " << simcon_last_error() << '\n';
  return static_cast<int>(s);
}

struct EquivOpts {
  CommonOpts common;
  std::uint32_t k = 0;
  std::uint32_t n = 2;
  std::string x, y;
};

int run_equiv(EquivOpts const& o) {
  WordHandle x, y;
  if (int rc = parse_word_pair(o.x, o.y, o.k, x, y)) return rc;
  int eq = 0;
  int in_first = 0;
  CStr witness;
  if (simcon_status s =
          simcon_distinguish(x.w, y.w, o.n, &eq, witness.out(), &in_first))
    return fail(s);
  if (o.common.json) {
    nlohmann::ordered_json doc;
    doc["x"] = o.x;
    doc["y"] = o.y;
    doc["n"] = o.n;
    doc["k"] = simcon_word_alphabet(x.w);
    doc["equivalent"] = eq != 0;
    if (!eq) {
      doc["witness"] = witness.str();
      doc["witness_in"] = in_first ? "first" : "second";
    }
    emit(doc.dump(2));
  } else if (eq) {
    std::cout << "equivalent\n";
  } else {
    std::cout << "distinguished by: " << witness.str() << '\n';
  }
  return 0;
}

struct WordOpts {
  CommonOpts common;
  std::uint32_t k = 0;
  std::uint32_t n = 2;
  std::string x;
};

int run_subwords(WordOpts const& o) {
  WordHandle x;
  if (int rc = parse_word_arg(o.x, o.k, x)) return rc;
  CStr out;
  if (simcon_status s =
          simcon_subwords(x.w, o.n, o.common.json ? 1 : 0, out.out()))
    return fail(s);
  if (o.common.json)
    emit(out.str());
  else
    std::cout << out.str();
  return 0;
}

int run_minimal(WordOpts const& o) {
  WordHandle x;
  if (int rc = parse_word_arg(o.x, o.k, x)) return rc;
  CStr rep;
  int was_minimal = 0;
  if (simcon_status s =
          simcon_minimal_representative(x.w, o.n, rep.out(), &was_minimal))
    return fail(s);
  if (o.common.json) {
    nlohmann::ordered_json doc;
    doc["word"] = o.x;
    doc["n"] = o.n;
    doc["minimal_representative"] = rep.str();
    doc["was_minimal"] = was_minimal != 0;
    emit(doc.dump(2));
  } else {
    std::cout << rep.str() << '\n'
              << (was_minimal ? "already minimal" : "not minimal") << '\n';
  }
  return 0;
}

int run_richness(WordOpts const& o) {
  WordHandle x;
  if (int rc = parse_word_arg(o.x, o.k, x)) return rc;
  uint64_t value = 0;
  if (simcon_status s = simcon_richness(x.w, &value)) return fail(s);
  if (o.common.json) {
    nlohmann::ordered_json doc;
    doc["word"] = o.x;
    doc["k"] = simcon_word_alphabet(x.w);
    doc["richness"] = value;
    emit(doc.dump(2));
  } else {
    std::cout << value << '\n';
  }
  return 0;
}

int run_factorize(WordOpts const& o) {
  WordHandle x;
  if (int rc = parse_word_arg(o.x, o.k, x)) return rc;
  CStr out;
  if (simcon_status s =
          simcon_factorization(x.w, o.common.json ? 1 : 0, out.out()))
    return fail(s);
  emit(out.str());
  return 0;
}

struct BoundsOpts {
  CommonOpts common;
  std::uint32_t k = 2;
  std::uint32_t n = 2;
  std::string which = "all";
  bool compute = false;
};

int run_bounds(BoundsOpts const& o) {
  std::string exact_decimal;
  bool have_exact = false;
  if (o.compute) {
    simcon_enum_config cfg = make_config(o.common, o.k, o.n);
    CStr json;
    simcon_status s = simcon_count(&cfg, 0, json.out());
    if (s == SIMCON_OK && json.p) {
      auto doc = nlohmann::json::parse(json.str());
      exact_decimal = doc.at("classes").get<std::string>();
      have_exact = true;
    } else if (s == SIMCON_ERR_BUDGET) {
      std::cerr << "warning: computation stopped early; "
                   "checking against the stored table only\n";
    } else {
      return fail(s);
    }
  }
  CStr out;
  if (simcon_status s = simcon_bounds(
          o.k, o.n, o.which.c_str(),
          have_exact ? exact_decimal.c_str() : nullptr,
          o.common.json ? 1 : 0, out.out()))
    return fail(s);
  emit(out.str());
  return 0;
}

struct TableOpts {
  CommonOpts common;
  bool embedded = false;
};

int run_table(TableOpts const& o) {
  if (o.embedded) {
    CStr csv;
    if (simcon_status s = simcon_table_csv(csv.out())) return fail(s);
    std::cout << csv.str();
    return 0;
  }
  double per_cell =
      o.common.budget_seconds > 0.0 ? o.common.budget_seconds : 5.0;
  CStr csv;
  uint32_t mismatches = 0;
  if (simcon_status s = simcon_table_check(
          o.common.threads, per_cell,
          o.common.memory_mb * 1024ull * 1024ull, csv.out(), &mismatches))
    return fail(s);
  std::cout << csv.str();
  if (mismatches) {
    std::cerr << "error: " << mismatches
              << " cell(s) disagree with the stored reference values\n";
    return 3;
  }
  return 0;
}

struct VerifyOpts {
  CommonOpts common;
  std::string suites;
  std::uint64_t seed = 0x514d4353ull;
  std::uint32_t samples = 1000;
  std::uint32_t max_len = 24;
};

int run_verify(VerifyOpts const& o) {
  CStr out;
  int all_passed = 0;
  if (simcon_status s = simcon_verify_suites(
          o.suites.empty() ? nullptr : o.suites.c_str(), o.seed, o.samples,
          o.max_len, o.common.json ? 1 : 0, o.common.timings ? 1 : 0,
          out.out(), &all_passed))
    return fail(s);
  emit(out.str());
  return all_passed ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scattered-subword congruence toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", []() {
    return std::string(simcon_version());
  });

  CountOpts count_opts;
  CLI::App* count_cmd =
      app.add_subcommand("count", "count congruence classes for (k, n)");
  count_cmd->add_option("-k,--alphabet", count_opts.k, "alphabet size")
      ->required();
  count_cmd->add_option("-n,--cap", count_opts.n, "subword length cap")
      ->required();
  count_cmd->add_option("--max-length", count_opts.max_length,
                        "hard cap on representative length (0 = default)");
  count_cmd->add_flag("--fingerprint", count_opts.fingerprint,
                      "use 128-bit digests instead of exact keys");
  count_cmd->add_flag("--cross-check", count_opts.cross_check,
                      "shadow a fingerprint run with an exact run");
  count_cmd->add_option("--emit-reps", count_opts.emit_reps,
                        "write minimal representatives to this file");
  add_common(count_cmd, count_opts.common);

  EquivOpts equiv_opts;
  CLI::App* equiv_cmd =
      app.add_subcommand("equiv", "test two words for congruence");
  equiv_cmd->add_option("-n,--cap", equiv_opts.n, "subword length cap")
      ->required();
  equiv_cmd->add_option("-k,--alphabet", equiv_opts.k,
                        "alphabet size (0 = infer from the words)");
  equiv_cmd->add_option("x", equiv_opts.x, "first word")->required();
  equiv_cmd->add_option("y", equiv_opts.y, "second word")->required();
  add_common(equiv_cmd, equiv_opts.common);

  WordOpts subwords_opts;
  CLI::App* subwords_cmd =
      app.add_subcommand("subwords", "list subwords up to the cap");
  subwords_cmd->add_option("-n,--cap", subwords_opts.n, "subword length cap")
      ->required();
  subwords_cmd->add_option("-k,--alphabet", subwords_opts.k,
                           "alphabet size (0 = infer)");
  subwords_cmd->add_option("word", subwords_opts.x, "input word")->required();
  add_common(subwords_cmd, subwords_opts.common);

  WordOpts minimal_opts;
  CLI::App* minimal_cmd = app.add_subcommand(
      "minimal", "minimal representative of the word's class");
  minimal_cmd->add_option("-n,--cap", minimal_opts.n, "subword length cap")
      ->required();
  minimal_cmd->add_option("-k,--alphabet", minimal_opts.k,
                          "alphabet size (0 = infer)");
  minimal_cmd->add_option("word", minimal_opts.x, "input word")->required();
  add_common(minimal_cmd, minimal_opts.common);

  WordOpts richness_opts;
  CLI::App* richness_cmd =
      app.add_subcommand("richness", "richness of a word");
  richness_cmd->add_option("-k,--alphabet", richness_opts.k,
                           "alphabet size (0 = infer)");
  richness_cmd->add_option("word", richness_opts.x, "input word")->required();
  add_common(richness_cmd, richness_opts.common);

  WordOpts factorize_opts;
  CLI::App* factorize_cmd =
      app.add_subcommand("factorize", "rich factorization of a word");
  factorize_cmd->add_option("-k,--alphabet", factorize_opts.k,
                            "alphabet size (0 = infer)");
  factorize_cmd->add_option("word", factorize_opts.x, "input word")
      ->required();
  add_common(factorize_cmd, factorize_opts.common);

  BoundsOpts bounds_opts;
  CLI::App* bounds_cmd =
      app.add_subcommand("bounds", "evaluate bounds on the class count");
  bounds_cmd->add_option("-k,--alphabet", bounds_opts.k, "alphabet size")
      ->required();
  bounds_cmd->add_option("-n,--cap", bounds_opts.n, "subword length cap")
      ->required();
  bounds_cmd
      ->add_option("--which", bounds_opts.which, "bound family to evaluate")
      ->check(CLI::IsMember({"all", "naive", "kppps", "main", "prop3", "prop6",
                             "eq5", "recurrences"}));
  bounds_cmd->add_flag("--compute", bounds_opts.compute,
                       "count classes first and check bounds against that");
  add_common(bounds_cmd, bounds_opts.common);

  TableOpts table_opts;
  CLI::App* table_cmd = app.add_subcommand(
      "table", "recompute the reference table and compare (CSV)");
  table_cmd->add_flag("--embedded", table_opts.embedded,
                      "print the stored reference table without recomputing");
  add_common(table_cmd, table_opts.common);

  VerifyOpts verify_opts;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run the randomized property suites");
  verify_cmd->add_option("--suites", verify_opts.suites,
                         "comma-separated suite names (default: all)");
  verify_cmd->add_option("--seed", verify_opts.seed, "base RNG seed");
  verify_cmd->add_option("--samples", verify_opts.samples,
                         "samples per suite");
  verify_cmd->add_option("--max-len", verify_opts.max_len,
                         "maximum random word length");
  add_common(verify_cmd, verify_opts.common);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;  // bad flags are domain errors
  }

  if (count_cmd->parsed()) return run_count(count_opts);
  if (equiv_cmd->parsed()) return run_equiv(equiv_opts);
  if (subwords_cmd->parsed()) return run_subwords(subwords_opts);
  if (minimal_cmd->parsed()) return run_minimal(minimal_opts);
  if (richness_cmd->parsed()) return run_richness(richness_opts);
  if (factorize_cmd->parsed()) return run_factorize(factorize_opts);
  if (bounds_cmd->parsed()) return run_bounds(bounds_opts);
  if (table_cmd->parsed()) return run_table(table_opts);
  if (verify_cmd->parsed()) return run_verify(verify_opts);
  return 1;
}
