#ifndef SIMCON_SIMCON_H
#define SIMCON_SIMCON_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/*
 * C interface to the subword-congruence library.
 *
 * Conventions:
 *   - every fallible function returns a simcon_status; on failure the
 *     thread-local message from simcon_last_error() explains it and output
 *     parameters are left untouched, except where noted for budget stops;
 *   - strings returned through char** are heap-allocated and must be
 *     released with simcon_string_free();
 *   - words are opaque handles carrying their alphabet size.
 */

typedef enum simcon_status {
  SIMCON_OK = 0,
  SIMCON_ERR_INPUT = 1,    /* invalid word, flag, or parameter */
  SIMCON_ERR_BUDGET = 2,   /* time/memory budget exhausted */
  SIMCON_ERR_INTERNAL = 3  /* invariant violation, e.g. digest collision */
} simcon_status;

const char* simcon_version(void);

/* Message for the most recent failing call on this thread. */
const char* simcon_last_error(void);

void simcon_string_free(char* s);

/* ---- words ---------------------------------------------------------- */

typedef struct simcon_word simcon_word;

/* Parses letters 'a'..'z' as 1..26.  k = 0 infers the alphabet as the
 * largest letter used (at least 1); otherwise letters must fit in k. */
simcon_status simcon_word_parse(const char* text, uint32_t k,
                                simcon_word** out);
void simcon_word_free(simcon_word* w);
simcon_status simcon_word_text(const simcon_word* w, char** out);
size_t simcon_word_length(const simcon_word* w);
uint32_t simcon_word_alphabet(const simcon_word* w);

/* ---- congruence ------------------------------------------------------ */

/* Same scattered subwords up to length n.  Alphabets must agree. */
simcon_status simcon_equivalent(const simcon_word* x, const simcon_word* y,
                                uint32_t n, int* out);

/* Verdict plus, when inequivalent, a shortest distinguishing subword
 * (drawn from the first word's side when both sides offer one of the
 * minimal length; lexicographically least there).  witness_out is set to
 * NULL when the words are equivalent. */
simcon_status simcon_distinguish(const simcon_word* x, const simcon_word* y,
                                 uint32_t n, int* equivalent_out,
                                 char** witness_out, int* witness_in_first);

/* All subwords of length <= n in shortlex order: newline-joined text, or
 * a JSON array when as_json is nonzero. */
simcon_status simcon_subwords(const simcon_word* x, uint32_t n, int as_json,
                              char** out);

/* Shortest, lexicographically least equivalent word.  Exhaustive at small
 * scale; fails with a budget error beyond it. */
simcon_status simcon_minimal_representative(const simcon_word* x, uint32_t n,
                                            char** out, int* was_minimal);

/* ---- richness -------------------------------------------------------- */

simcon_status simcon_richness(const simcon_word* x, uint64_t* out);

/* Greedy factorization into shortest rich prefixes; "x1*a1|x2*a2|...|y"
 * text (with a middle-dot separator) or a JSON object. */
simcon_status simcon_factorization(const simcon_word* x, int as_json,
                                   char** out);

/* ---- enumeration ----------------------------------------------------- */

typedef struct simcon_enum_config {
  uint32_t k;
  uint32_t n;
  int use_fingerprint;           /* 0: exact keys, 1: 128-bit digests */
  int cross_check;               /* fingerprint runs repeat in exact mode */
  uint32_t max_length;           /* 0: default safety cap */
  uint32_t worker_count;         /* 0: one per hardware thread */
  uint64_t memory_budget_bytes;  /* 0: unlimited */
  double time_budget_seconds;    /* 0: unlimited */
} simcon_enum_config;

void simcon_enum_config_init(simcon_enum_config* cfg, uint32_t k, uint32_t n);

/* Exact class count by minimal-representative enumeration.  On a budget
 * stop the JSON report is still produced — counts are then a lower bound,
 * marked "exact": false — and the call returns SIMCON_ERR_BUDGET. */
simcon_status simcon_count(const simcon_enum_config* cfg, int include_timings,
                           char** json_out);

/* Streams every minimal representative (grouped by length, lexicographic
 * within a length) before returning the same report as simcon_count. */
typedef void (*simcon_rep_callback)(const char* word_text, uint32_t length,
                                    void* user);
simcon_status simcon_enumerate(const simcon_enum_config* cfg,
                               simcon_rep_callback cb, void* user,
                               int include_timings, char** json_out);

/* Brute-force cross-validation of the engine at small (k, n). */
simcon_status simcon_verify_oracle(uint32_t k, uint32_t n, char** json_out,
                                   int* passed);

/* ---- bounds and reference table -------------------------------------- */

/* which: all | naive | kppps | main | prop3 | prop6 | eq5 | recurrences.
 * exact_decimal optionally supplies a freshly computed C_k(n) (decimal
 * string) to check against instead of the built-in table's entry. */
simcon_status simcon_bounds(uint32_t k, uint32_t n, const char* which,
                            const char* exact_decimal, int as_json,
                            char** out);

/* The built-in reference table as CSV (k,n,value,provenance,exactness). */
simcon_status simcon_table_csv(char** out);

/* Recomputes every reference cell with the given per-cell budgets and
 * emits CSV with a match column: match | consistent | mismatch | skipped.
 * mismatches receives the number of mismatch rows. */
simcon_status simcon_table_check(uint32_t worker_count,
                                 double per_cell_seconds,
                                 uint64_t memory_budget_bytes,
                                 char** csv_out, uint32_t* mismatches);

/* ---- property suites ------------------------------------------------- */

/* suites: comma-separated names, or NULL for all.  Reports per-suite
 * pass/fail; all_passed is 1 only if every requested suite passed. */
simcon_status simcon_verify_suites(const char* suites, uint64_t seed,
                                   uint32_t samples, uint32_t max_len,
                                   int as_json, int include_timings,
                                   char** out, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* SIMCON_SIMCON_H */
