#include "verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <limits>
#include <random>
#include <sstream>
#include <utility>

#include "congruence.hpp"
#include "enumeration.hpp"
#include "error.hpp"
#include "hash128.hpp"
#include "richness.hpp"
#include "subwords.hpp"
#include "word.hpp"

namespace simcon {

namespace {

// Deterministic sampling helper.  Draws go through modulo reduction rather
// than std::uniform_int_distribution so results do not depend on the
// standard library's distribution internals.
struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  std::uint32_t below(std::uint32_t bound) {
    return bound ? static_cast<std::uint32_t>(gen() % bound) : 0;
  }
  std::uint32_t in(std::uint32_t lo, std::uint32_t hi) {
    return lo + below(hi - lo + 1);
  }
};

std::uint64_t suite_seed(std::uint64_t base, std::string const& name) {
  Digest128 d = murmur3_x64_128(name.data(), name.size(),
                                static_cast<std::uint32_t>(base));
  return d.h1 ^ (base * 0x9e3779b97f4a7c15ull);
}

std::vector<letter_t> all_letters(std::uint32_t k) {
  std::vector<letter_t> out(k);
  for (std::uint32_t i = 0; i < k; ++i) out[i] = i + 1;
  return out;
}

std::vector<letter_t> letters_without(std::uint32_t k, letter_t missing) {
  std::vector<letter_t> out;
  for (std::uint32_t i = 1; i <= k; ++i)
    if (i != missing) out.push_back(i);
  return out;
}

Word random_word_over(Rng& rng, std::vector<letter_t> const& letters,
                      std::uint32_t max_len) {
  Word w;
  if (letters.empty()) return w;
  std::uint32_t len = rng.below(max_len + 1);
  for (std::uint32_t i = 0; i < len; ++i)
    w.push_back(letters[rng.below(static_cast<std::uint32_t>(letters.size()))]);
  return w;
}

Word random_word(Rng& rng, std::uint32_t k, std::uint32_t max_len) {
  return random_word_over(rng, all_letters(k), max_len);
}

Word shuffled(Rng& rng, std::vector<letter_t> letters) {
  for (std::size_t i = letters.size(); i > 1; --i)
    std::swap(letters[i - 1], letters[rng.below(static_cast<std::uint32_t>(i))]);
  Word w;
  for (letter_t a : letters) w.push_back(a);
  return w;
}

Word repeated(letter_t a, std::uint32_t times) {
  Word w;
  for (std::uint32_t i = 0; i < times; ++i) w.push_back(a);
  return w;
}

struct WordPair {
  Word x, y;
};

// Two words differing only in the length of one letter run, both runs at
// least `cap` long — equivalent under the cap by the run-pumping argument.
WordPair pumped_pair_over(Rng& rng, std::vector<letter_t> const& letters,
                          std::uint32_t cap, std::uint32_t pad,
                          Word lead = Word{}) {
  WordPair out;
  Word prefix = std::move(lead);
  prefix.append(random_word_over(rng, letters, pad));
  Word suffix = random_word_over(rng, letters, pad);
  letter_t b = letters[rng.below(static_cast<std::uint32_t>(letters.size()))];
  Word run_x = repeated(b, cap + rng.below(3));
  Word run_y = repeated(b, cap + rng.below(3));
  out.x = prefix;
  out.x.append(run_x);
  out.x.append(suffix);
  out.y = std::move(prefix);
  out.y.append(run_y);
  out.y.append(suffix);
  return out;
}

WordPair pumped_pair(Rng& rng, std::uint32_t k, std::uint32_t cap,
                     std::uint32_t pad) {
  return pumped_pair_over(rng, all_letters(k), cap, pad);
}

// Like pumped_pair_over, but both words contain every listed letter.
WordPair covering_pumped_pair(Rng& rng, std::vector<letter_t> const& letters,
                              std::uint32_t cap, std::uint32_t pad) {
  return pumped_pair_over(rng, letters, cap, pad, shuffled(rng, letters));
}

// One rich factor: a permutation of the alphabet with a few extra letters.
Word rich_block(Rng& rng, std::uint32_t k) {
  Word w = shuffled(rng, all_letters(k));
  w.append(random_word(rng, k, 2));
  return w;
}

Word poor_word(Rng& rng, std::uint32_t k, std::uint32_t max_len) {
  letter_t missing = 1 + rng.below(k);
  return random_word_over(rng, letters_without(k, missing), max_len);
}

Word stacked_rich(Rng& rng, std::uint32_t k, std::uint32_t blocks) {
  Word w;
  for (std::uint32_t i = 0; i < blocks; ++i) w.append(rich_block(rng, k));
  return w;
}

void fail(SuiteResult& out, std::string message) {
  ++out.failures;
  if (out.first_failure.empty()) out.first_failure = std::move(message);
}

std::string pair_text(Word const& x, Word const& y) {
  return "x='" + to_text(x) + "' y='" + to_text(y) + "'";
}

// --- suites -------------------------------------------------------------

void suite_capped_counts(Rng& rng, SuiteConfig const& cfg, SuiteResult& out) {
  for (std::uint32_t s = 0; s < cfg.samples; ++s, ++out.samples_run) {
    std::uint32_t k = rng.in(1, 4);
    std::uint32_t n = rng.below(4);
    Alphabet alphabet(k);
    Word x, y;
    if (s % 2 == 0) {
      auto p = pumped_pair(rng, k, n, cfg.max_len / 4);
      x = std::move(p.x);
      y = std::move(p.y);
      if (!equivalent(x, y, n, alphabet)) {
        fail(out, "pumped pair not equivalent at " + std::to_string(n) + ": " +
                      pair_text(x, y));
        continue;
      }
    } else {
      x = random_word(rng, k, cfg.max_len / 2);
      y = random_word(rng, k, cfg.max_len / 2);
    }
    bool equal_counts =
        capped_letter_counts(x, n, alphabet) == capped_letter_counts(y, n, alphabet);
    if (equivalent(x, y, n, alphabet) && !equal_counts)
      fail(out, "equivalent words with different capped counts at n=" +
                    std::to_string(n) + ": " + pair_text(x, y));
  }
}

void suite_segment_lemma(Rng& rng, SuiteConfig const& cfg, SuiteResult& out) {
  for (std::uint32_t s = 0; s < cfg.samples; ++s, ++out.samples_run) {
    std::uint32_t k = rng.in(2, 4);
    std::uint32_t n = rng.in(1, 4);
    std::uint32_t p = rng.below(std::min(n, 3u));  // p < n
    Alphabet alphabet(k);
    auto sub = letters_without(k, k);

    // Both words carry exactly p separators; one inner segment is pumped.
    std::uint32_t target = rng.below(p + 1);
    Word x, y;
    for (std::uint32_t i = 0; i <= p; ++i) {
      Word seg_x, seg_y;
      if (i == target && !sub.empty()) {
        auto pp = pumped_pair_over(rng, sub, n, 2);
        seg_x = std::move(pp.x);
        seg_y = std::move(pp.y);
      } else {
        seg_x = random_word_over(rng, sub, 3);
        seg_y = seg_x;
      }
      x.append(seg_x);
      y.append(seg_y);
      if (i < p) {
        x.push_back(k);
        y.push_back(k);
      }
    }
    if (!equivalent(x, y, n, alphabet)) {
      fail(out, "constructed pair not equivalent at n=" + std::to_string(n) +
                    ": " + pair_text(x, y));
      continue;
    }
    if (letter_count(x, k) != p || letter_count(y, k) != p) {
      fail(out, "separator count drifted: " + pair_text(x, y));
      continue;
    }
    auto dx = decompose_by_letter(x, k);
    auto dy = decompose_by_letter(y, k);
    if (dx.segments.size() != p + 1 || dy.segments.size() != p + 1) {
      fail(out, "decomposition segment count wrong: " + pair_text(x, y));
      continue;
    }
    for (std::uint32_t i = 0; i <= p; ++i)
      if (!equivalent(dx.segments[i], dy.segments[i], n - p, alphabet))
        fail(out, "segment " + std::to_string(i) + " not equivalent at " +
                      std::to_string(n - p) + ": " + pair_text(x, y));
  }
}

void suite_sandwich_lemma(Rng& rng, SuiteConfig const& cfg, SuiteResult& out) {
  for (std::uint32_t s = 0; s < cfg.samples; ++s, ++out.samples_run) {
    std::uint32_t k = rng.in(2, 3);
    std::uint32_t n = rng.below(3);
    std::uint32_t l1 = rng.below(3);
    std::uint32_t l2 = rng.below(3);
    Alphabet alphabet(k);
    Word x1 = l1 ? stacked_rich(rng, k, l1) : poor_word(rng, k, 3);
    Word x2 = l2 ? stacked_rich(rng, k, l2) : poor_word(rng, k, 3);
    if (!is_l_rich(x1, l1, alphabet) || !is_l_rich(x2, l2, alphabet)) {
      fail(out, "constructed flank with wrong richness: " + pair_text(x1, x2));
      continue;
    }
    auto p = pumped_pair(rng, k, n, 3);
    Word left = x1, right = x1;
    left.append(p.x);
    left.append(x2);
    right.append(p.y);
    right.append(x2);
    if (!equivalent(left, right, l1 + n + l2, alphabet))
      fail(out, "sandwich failed at cap " + std::to_string(l1 + n + l2) +
                    ": " + pair_text(left, right));
  }
}

void suite_factorwise_lemma(Rng& rng, SuiteConfig const& cfg,
                            SuiteResult& out) {
  for (std::uint32_t s = 0; s < cfg.samples; ++s, ++out.samples_run) {
    std::uint32_t k = rng.in(2, 3);
    std::uint32_t n = rng.below(3);
    std::uint32_t m = rng.in(1, 3);
    Alphabet alphabet(k);
    Word x, xp;
    std::vector<letter_t> separators;
    for (std::uint32_t i = 0; i < m; ++i) {
      letter_t c = 1 + rng.below(k);
      // Segments cover the alphabet minus c, so appending c closes one
      // rich factor exactly there on both sides.
      auto pp = covering_pumped_pair(rng, letters_without(k, c), n + 1, 2);
      x.append(pp.x);
      x.push_back(c);
      xp.append(pp.y);
      xp.push_back(c);
      separators.push_back(c);
    }
    {
      letter_t miss = 1 + rng.below(k);
      auto tails = pumped_pair_over(rng, letters_without(k, miss), n, 2);
      x.append(tails.x);
      xp.append(tails.y);
    }
    auto fx = rich_factorization(x, alphabet);
    auto fxp = rich_factorization(xp, alphabet);
    bool shape_ok =
        fx.richness() == m && fxp.richness() == m;
    for (std::uint32_t i = 0; shape_ok && i < m; ++i)
      shape_ok = fx.pairs[i].separator == separators[i] &&
                 fxp.pairs[i].separator == separators[i];
    if (!shape_ok) {
      fail(out, "construction does not factor as intended: " + pair_text(x, xp));
      continue;
    }
    if (!equivalent(x, xp, n + m, alphabet))
      fail(out, "factorwise conclusion failed at cap " +
                    std::to_string(n + m) + ": " + pair_text(x, xp));
  }
}

void suite_refinement_chain(Rng& rng, SuiteConfig const& cfg,
                            SuiteResult& out) {
  for (std::uint32_t s = 0; s < cfg.samples; ++s, ++out.samples_run) {
    std::uint32_t k = rng.in(1, 3);
    std::uint32_t n = rng.below(4);
    Alphabet alphabet(k);
    Word x, y;
    if (s % 2 == 0) {
      auto p = pumped_pair(rng, k, n + 1, cfg.max_len / 4);
      x = std::move(p.x);
      y = std::move(p.y);
    } else {
      x = random_word(rng, k, cfg.max_len / 2);
      y = random_word(rng, k, cfg.max_len / 2);
    }
    if (equivalent(x, y, n + 1, alphabet) && !equivalent(x, y, n, alphabet))
      fail(out, "equivalence at " + std::to_string(n + 1) +
                    " does not refine to " + std::to_string(n) + ": " +
                    pair_text(x, y));
  }
}

void suite_congruence_closure(Rng& rng, SuiteConfig const& cfg,
                              SuiteResult& out) {
  for (std::uint32_t s = 0; s < cfg.samples; ++s, ++out.samples_run) {
    std::uint32_t k = rng.in(1, 3);
    std::uint32_t n = rng.below(4);
    Alphabet alphabet(k);
    auto p = pumped_pair(rng, k, n, 4);
    if (!equivalent(p.x, p.y, n, alphabet)) {
      fail(out, "pumped pair not equivalent: " + pair_text(p.x, p.y));
      continue;
    }
    Word u = random_word(rng, k, 4);
    Word v = random_word(rng, k, 4);
    Word uxv = u, uyv = u;
    uxv.append(p.x);
    uxv.append(v);
    uyv.append(p.y);
    uyv.append(v);
    if (!equivalent(uxv, uyv, n, alphabet))
      fail(out, "congruence closure broken at n=" + std::to_string(n) + ": " +
                    pair_text(uxv, uyv));
  }
}

void suite_short_words(Rng& rng, SuiteConfig const& cfg, SuiteResult& out) {
  for (std::uint32_t s = 0; s < cfg.samples; ++s, ++out.samples_run) {
    std::uint32_t k = rng.in(1, 3);
    std::uint32_t n = rng.below(5);
    Alphabet alphabet(k);
    Word x = random_word(rng, k, n);
    Word y = random_word(rng, k, n);
    bool expected = x == y;
    if (equivalent(x, y, n, alphabet) != expected)
      fail(out, "short words must be equivalent exactly when equal: " +
                    pair_text(x, y) + " at n=" + std::to_string(n));
  }
}

void suite_trivial_at_zero(Rng& rng, SuiteConfig const& cfg,
                           SuiteResult& out) {
  for (std::uint32_t s = 0; s < cfg.samples; ++s, ++out.samples_run) {
    std::uint32_t k = rng.in(1, 4);
    Alphabet alphabet(k);
    Word x = random_word(rng, k, cfg.max_len);
    Word y = random_word(rng, k, cfg.max_len);
    if (!equivalent(x, y, 0, alphabet))
      fail(out, "the cap-0 relation must be trivial: " + pair_text(x, y));
  }
}

void suite_key_soundness(Rng& rng, SuiteConfig const& cfg, SuiteResult& out) {
  for (std::uint32_t s = 0; s < cfg.samples; ++s, ++out.samples_run) {
    std::uint32_t k = rng.in(1, 3);
    std::uint32_t n = rng.below(4);
    Alphabet alphabet(k);
    Word x, y;
    if (s % 2 == 0) {
      auto p = pumped_pair(rng, k, n, 3);
      x = std::move(p.x);
      y = std::move(p.y);
    } else {
      x = random_word(rng, k, 10);
      y = random_word(rng, k, 10);
    }
    bool keys_equal = congruence_key(x, n, KeyMode::exact, alphabet) ==
                      congruence_key(y, n, KeyMode::exact, alphabet);
    bool sets_equal = subwords_up_to(x, n) == subwords_up_to(y, n);
    if (keys_equal != sets_equal)
      fail(out, "key equality must mirror subword-set equality: " +
                    pair_text(x, y) + " at n=" + std::to_string(n));
  }
}

void suite_mode_agreement(Rng& rng, SuiteConfig const& cfg,
                          SuiteResult& out) {
  for (std::uint32_t s = 0; s < cfg.samples; ++s, ++out.samples_run) {
    std::uint32_t k = rng.in(1, 3);
    std::uint32_t n = rng.below(4);
    Alphabet alphabet(k);
    Word x, y;
    if (s % 2 == 0) {
      auto p = pumped_pair(rng, k, n, 3);
      x = std::move(p.x);
      y = std::move(p.y);
    } else {
      x = random_word(rng, k, 10);
      y = random_word(rng, k, 10);
    }
    bool exact_equal = congruence_key(x, n, KeyMode::exact, alphabet) ==
                       congruence_key(y, n, KeyMode::exact, alphabet);
    bool digest_equal = congruence_key(x, n, KeyMode::fingerprint, alphabet) ==
                        congruence_key(y, n, KeyMode::fingerprint, alphabet);
    if (exact_equal != digest_equal)
      fail(out, "fingerprint keys disagree with exact keys: " +
                    pair_text(x, y) + " at n=" + std::to_string(n));
  }
}

void suite_richness_factorization(Rng& rng, SuiteConfig const& cfg,
                                  SuiteResult& out) {
  std::uint64_t blocked_witnesses = 0;
  for (std::uint32_t s = 0; s < cfg.samples; ++s, ++out.samples_run) {
    std::uint32_t k = rng.in(1, 4);
    Word x = random_word(rng, k, cfg.max_len);
    if (s == 0) {
      // Pinned witness that plentiful letters do not imply richness:
      // two of each letter, yet only one rich factor fits.
      k = 2;
      x = parse_word("aabb", Alphabet(2));
    }
    Alphabet alphabet(k);
    auto f = rich_factorization(x, alphabet);
    if (!(f.recompose() == x)) {
      fail(out, "factorization does not recompose: '" + to_text(x) + "'");
      continue;
    }
    bool shape_ok = true;
    for (auto const& pr : f.pairs) {
      if (is_rich(pr.segment, alphabet)) shape_ok = false;
      Word factor = pr.segment;
      factor.push_back(pr.separator);
      if (!is_rich(factor, alphabet)) shape_ok = false;
      // No proper prefix of segment+separator may be rich; prefixes of the
      // segment are prefixes of a poor word, so checking them all is cheap.
      Word prefix;
      for (std::size_t i = 0; i + 1 < factor.length(); ++i) {
        prefix.push_back(factor[i]);
        if (is_rich(prefix, alphabet)) shape_ok = false;
      }
    }
    if (is_rich(f.tail, alphabet)) shape_ok = false;
    if (!shape_ok) {
      fail(out, "factorization shape broken for '" + to_text(x) + "'");
      continue;
    }
    if (richness(x, alphabet) != f.richness())
      fail(out, "richness disagrees with its factorization for '" +
                    to_text(x) + "'");
    Word z = random_word(rng, k, cfg.max_len / 2);
    Word xz = x;
    xz.append(z);
    if (richness(xz, alphabet) <
        richness(x, alphabet) + richness(z, alphabet))
      fail(out, "richness is not superadditive on '" + to_text(x) + "' + '" +
                    to_text(z) + "'");
    if (k >= 2) {
      std::size_t floor_count = std::numeric_limits<std::size_t>::max();
      for (std::uint32_t a = 1; a <= k; ++a)
        floor_count = std::min(floor_count, letter_count(x, a));
      if (floor_count >= 1 && f.richness() < floor_count) ++blocked_witnesses;
    }
  }
  if (blocked_witnesses == 0)
    fail(out, "expected at least one word whose letter counts overstate its "
              "richness");
}

void suite_richness_saturation(Rng& rng, SuiteConfig const& cfg,
                               SuiteResult& out) {
  for (std::uint32_t s = 0; s < cfg.samples; ++s, ++out.samples_run) {
    std::uint32_t k = rng.in(2, 3);
    std::uint32_t n = rng.below(3);
    Alphabet alphabet(k);
    Word x = stacked_rich(rng, k, n);
    x.append(random_word(rng, k, 4));
    Word y = stacked_rich(rng, k, n);
    y.append(random_word(rng, k, 4));
    if (richness(x, alphabet) < n || richness(y, alphabet) < n) {
      fail(out, "constructed word lost richness: " + pair_text(x, y));
      continue;
    }
    if (!equivalent(x, y, n, alphabet))
      fail(out, "words of richness >= " + std::to_string(n) +
                    " must be equivalent at that cap: " + pair_text(x, y));
  }
}

void suite_oracle_equivalence(Rng&, SuiteConfig const&, SuiteResult& out) {
  static constexpr std::pair<std::uint32_t, std::uint32_t> kGrid[] = {
      {1, 1}, {1, 2}, {1, 3}, {1, 4}, {2, 1},
      {2, 2}, {2, 3}, {3, 1}, {3, 2}};
  for (auto [k, n] : kGrid) {
    ++out.samples_run;
    OracleReport r = verify_against_oracle(k, n);
    if (!r.passed)
      fail(out, "oracle disagreement at k=" + std::to_string(k) +
                    " n=" + std::to_string(n) + ": " + r.failure);
  }
}

using SuiteFn = void (*)(Rng&, SuiteConfig const&, SuiteResult&);

struct SuiteEntry {
  char const* name;
  SuiteFn fn;
};

constexpr SuiteEntry kSuites[] = {
    {"capped-counts", suite_capped_counts},
    {"segment-lemma", suite_segment_lemma},
    {"sandwich-lemma", suite_sandwich_lemma},
    {"factorwise-lemma", suite_factorwise_lemma},
    {"refinement-chain", suite_refinement_chain},
    {"congruence-closure", suite_congruence_closure},
    {"short-words", suite_short_words},
    {"trivial-at-zero", suite_trivial_at_zero},
    {"key-soundness", suite_key_soundness},
    {"mode-agreement", suite_mode_agreement},
    {"richness-factorization", suite_richness_factorization},
    {"richness-saturation", suite_richness_saturation},
    {"oracle-equivalence", suite_oracle_equivalence},
};

}  // namespace

bool SuiteReport::all_passed() const {
  return std::all_of(suites.begin(), suites.end(),
                     [](SuiteResult const& s) { return s.passed; });
}

std::string SuiteReport::to_json(bool include_timings) const {
  nlohmann::ordered_json doc;
  doc["all_passed"] = all_passed();
  auto arr = nlohmann::ordered_json::array();
  for (auto const& s : suites) {
    nlohmann::ordered_json row;
    row["name"] = s.name;
    row["passed"] = s.passed;
    row["samples"] = s.samples_run;
    row["failures"] = s.failures;
    if (!s.first_failure.empty()) row["first_failure"] = s.first_failure;
    if (include_timings) row["duration_seconds"] = s.duration_seconds;
    arr.push_back(std::move(row));
  }
  doc["suites"] = std::move(arr);
  return doc.dump(2);
}

std::string SuiteReport::to_text() const {
  std::ostringstream out;
  for (auto const& s : suites) {
    out << (s.passed ? "PASS" : "FAIL") << "  " << s.name << "  ("
        << s.samples_run << " samples";
    if (!s.passed) out << ", " << s.failures << " failures";
    out << ")\n";
    if (!s.passed && !s.first_failure.empty())
      out << "      first: " << s.first_failure << '\n';
  }
  out << (all_passed() ? "all suites passed" : "SUITE FAILURES PRESENT")
      << '\n';
  return out.str();
}

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (auto const& e : kSuites) out.emplace_back(e.name);
  return out;
}

SuiteResult run_suite(std::string const& name, SuiteConfig const& config) {
  for (auto const& entry : kSuites) {
    if (name != entry.name) continue;
    SuiteResult result;
    result.name = name;
    Rng rng(suite_seed(config.seed, name));
    auto started = std::chrono::steady_clock::now();
    entry.fn(rng, config, result);
    result.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      started)
            .count();
    result.passed = result.failures == 0;
    return result;
  }
  throw input_error("unknown verification suite: " + name);
}

SuiteReport run_property_suites(SuiteConfig const& config) {
  SuiteReport report;
  for (auto const& entry : kSuites)
    report.suites.push_back(run_suite(entry.name, config));
  return report;
}

}  // namespace simcon
