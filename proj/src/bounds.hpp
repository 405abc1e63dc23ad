#ifndef SIMCON_BOUNDS_HPP_
#define SIMCON_BOUNDS_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace simcon {

// Closed-form estimates for the class count C_k(n), checked numerically
// against exact values.  Real-valued bounds are evaluated in double
// precision and compared literally (no epsilon); the signed margin makes
// near-ties visible.  Integer-valued bounds stay in arbitrary precision
// end to end.

enum class Provenance { computed, published };

struct TableEntry {
  mpz_class value;
  bool exact = true;  // false: value is a verified lower bound only
  Provenance provenance = Provenance::computed;
};

class CountTable {
 public:
  // The published reference table: exact counts for small (k, n) plus a
  // few cells known only as lower bounds.
  static CountTable const& embedded();

  void set(std::uint32_t k, std::uint32_t n, TableEntry entry);
  TableEntry const* find(std::uint32_t k, std::uint32_t n) const;

  // Exact C_k(n) if known.  Falls back to the closed forms C_1(n) = n+1,
  // C_k(0) = 1 and C_k(1) = 2^k when no entry is stored.
  std::optional<mpz_class> exact_value(std::uint32_t k, std::uint32_t n) const;

  std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, TableEntry>>
  sorted_entries() const;

  // Columns: k, n, value, provenance, exactness.
  std::string to_csv() const;

 private:
  std::map<std::pair<std::uint32_t, std::uint32_t>, TableEntry> entries_;
};

enum class BoundStatus {
  holds,
  violated,
  not_applicable,  // (k, n) outside the bound's validity domain
  unchecked        // no exact count available to compare against
};

char const* bound_status_name(BoundStatus s);

// Either an exact integer or a double, depending on the formula.
struct BoundValue {
  bool is_integer = false;
  mpz_class integer;
  double real = 0.0;

  static BoundValue of(mpz_class v);
  static BoundValue of(double v);
  double as_double() const;
  std::string to_string() const;
};

struct BoundsReport {
  std::string bound_id;
  std::uint32_t k = 0;
  std::uint32_t n = 0;
  // log_scale: the bound constrains log2 C_k(n); otherwise C_k(n) itself.
  bool log_scale = false;
  bool has_lower = false;
  bool has_upper = false;
  bool lower_strict = false;
  bool upper_strict = false;
  BoundValue lower;
  BoundValue upper;
  bool has_exact = false;
  mpz_class exact_value;
  BoundStatus satisfied = BoundStatus::unchecked;
  // Signed distance to the nearest boundary in the bound's own scale:
  // positive inside, negative once violated, zero when not comparable.
  double margin = 0.0;
  std::string note;
};

double log2_mpz(mpz_class const& value);

// (k^{n+1} - 1) / (k - 1), the number of classes of words of length <= n.
mpz_class naive_lower_value(std::uint32_t k, std::uint32_t n);

// Two reports: the count-scale lower bound above (naive-eq1) and the
// doubly-exponential upper bound kept as an exponent of 2 (naive-eq2).
// k = 1 is outside the closed form's domain.
std::vector<BoundsReport> naive_bounds(std::uint32_t k, std::uint32_t n,
                                       CountTable const& table);

// One report, kppps-even or kppps-odd by the parity of n.  The sandwich
// bounds log2 C_k(n); the left side is non-strict for even n and strict
// for odd n.  Domain: k > 1 and n > 0 (at n = 0 the stated lower bound
// already exceeds log2 C_k(0) = 0, so the claim cannot include it).
std::vector<BoundsReport> kppps_bounds(std::uint32_t k, std::uint32_t n,
                                       CountTable const& table);

// Two strict log-scale reports (main-lower, main-upper); domain k, n > 1.
std::vector<BoundsReport> main_bounds(std::uint32_t k, std::uint32_t n,
                                      CountTable const& table);

// Sum over p of C_{k-1}(n-p)^{p+1}; requires exact C_{k-1}(0..n) and
// throws an input error naming any missing dependency.
mpz_class prop3_lower(std::uint32_t k, std::uint32_t n,
                      CountTable const& table);

// 1 + sum over m of k^{m+1} C_{k-1}(n-m+1)^m C_{k-1}(n-m); requires exact
// C_{k-1}(1..n+1) (nothing for n = 0, where the value is 1).
mpz_class prop6_upper(std::uint32_t k, std::uint32_t n,
                      CountTable const& table);

// 2 * sum over m < 2n of n^m = 2 (n^{2n} - 1) / (n - 1), an upper bound
// for C_2(n); defined for n >= 2 only.
mpz_class c2_upper(std::uint32_t n);

std::vector<BoundsReport> prop3_report(std::uint32_t k, std::uint32_t n,
                                       CountTable const& table);
std::vector<BoundsReport> prop6_report(std::uint32_t k, std::uint32_t n,
                                       CountTable const& table);
std::vector<BoundsReport> c2_upper_report(std::uint32_t k, std::uint32_t n,
                                          CountTable const& table);

// Every instantiation of the two index recurrences on exact table cells:
//   C_{k+l}(n+2) >= C_k(n)^{l+2}   (l >= 1; l = 0 is not part of the claim
//                                   and in fact fails, e.g. at k=2, n=3)
//   C_k(n+2)    <= (k+1)^{2k} C_k(n)^{2k-1}
// Cells known only as lower bounds are skipped on both sides.
std::vector<BoundsReport> kppps_recurrence_check(CountTable const& table);

// All applicable bound checks for one (k, n).
std::vector<BoundsReport> all_bounds(std::uint32_t k, std::uint32_t n,
                                     CountTable const& table);

// F(k, x) = ((x + 2k - 1)/k)^k and G(k, x, y) = (y+1) F(k, x - y + 1),
// the auxiliary functions behind the upper-bound proof.
double F(std::uint32_t k, double x);
double G(std::uint32_t k, double x, double y);

// Where G(k, x, .) peaks on [0, x].
double g_maximizer(std::uint32_t k, double x);

struct AppendixCheck {
  bool holds = false;
  double y_max = 0.0;       // maximizer of G(k-1, n, .)
  std::uint32_t worst_m = 0;
  double worst_margin = 0.0;  // smallest rhs - lhs over m
};

// Checks (m+1)((n-m+2k-2)/(k-1))^{k-1} <= ((n+2k-1)/k)^k for every
// m in 0..n-1; domain k >= 2, n >= 2.
AppendixCheck appendix_inequality_check(std::uint32_t k, std::uint32_t n);

std::string bounds_to_json(std::vector<BoundsReport> const& reports);
std::string bounds_to_text(std::vector<BoundsReport> const& reports);

}  // namespace simcon

#endif  // SIMCON_BOUNDS_HPP_
