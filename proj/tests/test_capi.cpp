#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include <json.hpp>

#include <simcon/simcon.h>

namespace {

// Scoped owners so failed CHECKs don't leak.
struct Str {
  char* p = nullptr;
  ~Str() { simcon_string_free(p); }
  std::string get() const { return p ? p : "<null>"; }
};

struct W {
  simcon_word* w = nullptr;
  explicit W(char const* text, uint32_t k = 0) {
    REQUIRE(simcon_word_parse(text, k, &w) == SIMCON_OK);
  }
  ~W() { simcon_word_free(w); }
};

}  // namespace

TEST_CASE("version and error plumbing") {
  CHECK(std::string(simcon_version()).find("simcon") == 0);
  simcon_word* w = nullptr;
  CHECK(simcon_word_parse("a$c", 3, &w) == SIMCON_ERR_INPUT);
  CHECK(w == nullptr);
  CHECK(std::strlen(simcon_last_error()) > 0);
  CHECK(simcon_word_parse(nullptr, 2, &w) == SIMCON_ERR_INPUT);
  simcon_string_free(nullptr);  // must be a no-op
}

TEST_CASE("word round-trip and alphabet inference") {
  W w("abacb");
  CHECK(simcon_word_length(w.w) == 5);
  CHECK(simcon_word_alphabet(w.w) == 3);  // inferred from the widest letter
  Str text;
  CHECK(simcon_word_text(w.w, &text.p) == SIMCON_OK);
  CHECK(text.get() == "abacb");

  W wide("ab", 7);
  CHECK(simcon_word_alphabet(wide.w) == 7);
  W empty("");
  CHECK(simcon_word_length(empty.w) == 0);
  CHECK(simcon_word_alphabet(empty.w) == 1);
}

TEST_CASE("equivalence and witness search") {
  W x("abacb", 3);
  W y("baaacbb", 3);
  int eq = -1;
  CHECK(simcon_equivalent(x.w, y.w, 2, &eq) == SIMCON_OK);
  CHECK(eq == 1);
  CHECK(simcon_equivalent(x.w, y.w, 3, &eq) == SIMCON_OK);
  CHECK(eq == 0);

  Str witness;
  int in_first = -1;
  CHECK(simcon_distinguish(x.w, y.w, 3, &eq, &witness.p, &in_first) ==
        SIMCON_OK);
  CHECK(eq == 0);
  CHECK(witness.get() == "aba");
  CHECK(in_first == 1);

  Str none;
  CHECK(simcon_distinguish(x.w, y.w, 2, &eq, &none.p, &in_first) == SIMCON_OK);
  CHECK(eq == 1);
  CHECK(none.p == nullptr);

  W other("ab", 2);
  CHECK(simcon_equivalent(x.w, other.w, 2, &eq) == SIMCON_ERR_INPUT);
}

TEST_CASE("subwords in both formats") {
  W x("abc", 3);
  Str text;
  REQUIRE(simcon_subwords(x.w, 2, 0, &text.p) == SIMCON_OK);
  CHECK(text.get() == "\na\nb\nc\nab\nac\nbc\n");
  Str json;
  REQUIRE(simcon_subwords(x.w, 2, 1, &json.p) == SIMCON_OK);
  auto doc = nlohmann::json::parse(json.get());
  CHECK(doc.at("count").get<int>() == 7);
  CHECK(doc.at("subwords").size() == 7);
  CHECK(doc.at("subwords")[1].get<std::string>() == "a");
}

TEST_CASE("minimal representative") {
  W y("baaacbb", 3);
  Str rep;
  int was_minimal = -1;
  REQUIRE(simcon_minimal_representative(y.w, 2, &rep.p, &was_minimal) ==
          SIMCON_OK);
  CHECK(rep.get() == "abacb");
  CHECK(was_minimal == 0);
  W m("abacb", 3);
  Str rep2;
  REQUIRE(simcon_minimal_representative(m.w, 2, &rep2.p, &was_minimal) ==
          SIMCON_OK);
  CHECK(rep2.get() == "abacb");
  CHECK(was_minimal == 1);
}

TEST_CASE("richness and factorization") {
  W x("bbaaabbccccaabbbaa");
  uint64_t value = 0;
  CHECK(simcon_richness(x.w, &value) == SIMCON_OK);
  CHECK(value == 2);
  Str text;
  REQUIRE(simcon_factorization(x.w, 0, &text.p) == SIMCON_OK);
  CHECK(text.get() == "bbaaabb\xc2\xb7" "c|cccaa\xc2\xb7" "b|bbaa");
  Str json;
  REQUIRE(simcon_factorization(x.w, 1, &json.p) == SIMCON_OK);
  auto doc = nlohmann::json::parse(json.get());
  CHECK(doc.at("richness").get<int>() == 2);
  CHECK(doc.at("pairs").size() == 2);
  CHECK(doc.at("pairs")[0].at("separator").get<std::string>() == "c");
  CHECK(doc.at("tail").get<std::string>() == "bbaa");
}

TEST_CASE("counting through the C surface") {
  simcon_enum_config cfg;
  simcon_enum_config_init(&cfg, 2, 2);
  Str json;
  REQUIRE(simcon_count(&cfg, 0, &json.p) == SIMCON_OK);
  auto doc = nlohmann::json::parse(json.get());
  CHECK(doc.at("classes").get<std::string>() == "16");
  CHECK(doc.at("exact").get<bool>());
  CHECK(doc.at("per_length").size() == 5);
  CHECK(json.get().find("duration") == std::string::npos);
}

TEST_CASE("enumeration callback sees every representative in order") {
  simcon_enum_config cfg;
  simcon_enum_config_init(&cfg, 2, 1);
  std::vector<std::string> reps;
  auto cb = [](const char* text, uint32_t, void* user) {
    static_cast<std::vector<std::string>*>(user)->push_back(text);
  };
  Str json;
  REQUIRE(simcon_enumerate(&cfg, cb, &reps, 0, &json.p) == SIMCON_OK);
  CHECK(reps == std::vector<std::string>{"", "a", "b", "ab"});
}

TEST_CASE("budget stops surface as the budget status with a report") {
  simcon_enum_config cfg;
  simcon_enum_config_init(&cfg, 2, 9);
  cfg.time_budget_seconds = 0.02;
  Str json;
  CHECK(simcon_count(&cfg, 0, &json.p) == SIMCON_ERR_BUDGET);
  REQUIRE(json.p != nullptr);
  auto doc = nlohmann::json::parse(json.get());
  CHECK(!doc.at("exact").get<bool>());
  CHECK(doc.at("termination").get<std::string>() == "budget-exceeded");
  CHECK(std::string(simcon_last_error()).find("lower bound") !=
        std::string::npos);
}

TEST_CASE("bad enumeration config is an input error") {
  simcon_enum_config cfg;
  simcon_enum_config_init(&cfg, 0, 2);
  Str json;
  CHECK(simcon_count(&cfg, 0, &json.p) == SIMCON_ERR_INPUT);
  CHECK(json.p == nullptr);
}

TEST_CASE("oracle verification") {
  Str json;
  int passed = 0;
  REQUIRE(simcon_verify_oracle(2, 2, &json.p, &passed) == SIMCON_OK);
  CHECK(passed == 1);
  auto doc = nlohmann::json::parse(json.get());
  CHECK(doc.at("passed").get<bool>());
  CHECK(doc.at("engine_classes").get<std::string>() == "16");
}

TEST_CASE("bounds evaluation with and without an override") {
  Str text;
  REQUIRE(simcon_bounds(2, 3, "naive", nullptr, 0, &text.p) == SIMCON_OK);
  CHECK(text.get().find("holds") != std::string::npos);

  Str json;
  REQUIRE(simcon_bounds(2, 3, "all", nullptr, 1, &json.p) == SIMCON_OK);
  auto doc = nlohmann::json::parse(json.get());
  CHECK(doc.is_array());
  CHECK(doc.size() >= 6);

  // An override value feeds the judgement.
  Str forced;
  REQUIRE(simcon_bounds(2, 3, "naive", "1000000000", 0, &forced.p) ==
          SIMCON_OK);
  CHECK(forced.get().find("violated") != std::string::npos);

  Str bad;
  CHECK(simcon_bounds(2, 3, "nonsense", nullptr, 0, &bad.p) ==
        SIMCON_ERR_INPUT);
}

TEST_CASE("reference table and its recomputation") {
  Str csv;
  REQUIRE(simcon_table_csv(&csv.p) == SIMCON_OK);
  CHECK(csv.get().find("k,n,value,provenance,exactness\n") == 0);
  CHECK(csv.get().find("2,3,68,published,exact") != std::string::npos);

  Str check_csv;
  uint32_t mismatches = 99;
  REQUIRE(simcon_table_check(2, 0.05, 0, &check_csv.p, &mismatches) ==
          SIMCON_OK);
  CHECK(mismatches == 0);
  CHECK(check_csv.get().find("1,0,1,exact,1,exhausted,match") !=
        std::string::npos);
  CHECK(check_csv.get().find("mismatch") == std::string::npos);
}

TEST_CASE("property suites through the C surface") {
  Str out;
  int all_passed = 0;
  REQUIRE(simcon_verify_suites("capped-counts,short-words", 7, 50, 16, 0, 0,
                               &out.p, &all_passed) == SIMCON_OK);
  CHECK(all_passed == 1);
  CHECK(out.get().find("capped-counts") != std::string::npos);
  CHECK(out.get().find("short-words") != std::string::npos);
  CHECK(out.get().find("sandwich") == std::string::npos);

  Str bad;
  CHECK(simcon_verify_suites("bogus", 7, 50, 16, 0, 0, &bad.p, &all_passed) ==
        SIMCON_ERR_INPUT);

  Str json;
  REQUIRE(simcon_verify_suites(nullptr, 7, 40, 16, 1, 0, &json.p,
                               &all_passed) == SIMCON_OK);
  auto doc = nlohmann::json::parse(json.get());
  CHECK(all_passed == 1);
  CHECK(doc.at("suites").size() == 13);
}

TEST_CASE("fingerprint counting with cross-check") {
  simcon_enum_config cfg;
  simcon_enum_config_init(&cfg, 2, 3);
  cfg.use_fingerprint = 1;
  cfg.cross_check = 1;
  Str json;
  REQUIRE(simcon_count(&cfg, 0, &json.p) == SIMCON_OK);
  auto doc = nlohmann::json::parse(json.get());
  CHECK(doc.at("classes").get<std::string>() == "68");
  CHECK(doc.at("mode").get<std::string>() == "fingerprint");
  CHECK(doc.contains("collision_bound"));
}
