#include "bounds.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "error.hpp"

namespace simcon {

namespace {

mpz_class mpz_pow(mpz_class const& base, unsigned long exponent) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

mpz_class uint_pow(unsigned long base, unsigned long exponent) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exponent);
  return out;
}

std::string cell_name(std::uint32_t k, std::uint32_t n) {
  return "C_" + std::to_string(k) + "(" + std::to_string(n) + ")";
}

// Exact entries only; lower-bound cells do not qualify.
std::optional<mpz_class> exact_dependency(CountTable const& table,
                                          std::uint32_t k, std::uint32_t n) {
  return table.exact_value(k, n);
}

BoundsReport base_report(char const* id, std::uint32_t k, std::uint32_t n) {
  BoundsReport r;
  r.bound_id = id;
  r.k = k;
  r.n = n;
  return r;
}

BoundsReport not_applicable(char const* id, std::uint32_t k, std::uint32_t n,
                            std::string note) {
  BoundsReport r = base_report(id, k, n);
  r.satisfied = BoundStatus::not_applicable;
  r.note = std::move(note);
  return r;
}

// Fills satisfied + margin from whichever sides are present.  The exact
// value is compared on the report's own scale.
void judge(BoundsReport& r) {
  if (r.satisfied == BoundStatus::not_applicable) return;
  if (!r.has_exact) {
    r.satisfied = BoundStatus::unchecked;
    return;
  }
  bool ok = true;
  double margin = std::numeric_limits<double>::infinity();
  if (r.log_scale) {
    double value = log2_mpz(r.exact_value);
    if (r.has_lower) {
      double lo = r.lower.as_double();
      ok = ok && (r.lower_strict ? lo < value : lo <= value);
      margin = std::min(margin, value - lo);
    }
    if (r.has_upper) {
      double hi = r.upper.as_double();
      ok = ok && (r.upper_strict ? value < hi : value <= hi);
      margin = std::min(margin, hi - value);
    }
  } else {
    // Count scale: integer comparisons, margin as a (possibly saturating)
    // double of the integer gap.
    if (r.has_lower) {
      mpz_class gap = r.exact_value - r.lower.integer;
      ok = ok && (r.lower_strict ? gap > 0 : gap >= 0);
      margin = std::min(margin, gap.get_d());
    }
    if (r.has_upper) {
      mpz_class gap = r.upper.integer - r.exact_value;
      ok = ok && (r.upper_strict ? gap > 0 : gap >= 0);
      margin = std::min(margin, gap.get_d());
    }
  }
  r.satisfied = ok ? BoundStatus::holds : BoundStatus::violated;
  r.margin = margin;
}

void attach_exact(BoundsReport& r, CountTable const& table) {
  if (auto exact = table.exact_value(r.k, r.n)) {
    r.has_exact = true;
    r.exact_value = *exact;
  }
}

}  // namespace

CountTable const& CountTable::embedded() {
  static CountTable const table = [] {
    CountTable t;
    auto exact = [&t](std::uint32_t k, std::uint32_t n, char const* v) {
      t.set(k, n, TableEntry{mpz_class(v), true, Provenance::published});
    };
    auto lower = [&t](std::uint32_t k, std::uint32_t n, char const* v) {
      t.set(k, n, TableEntry{mpz_class(v), false, Provenance::published});
    };
    for (std::uint32_t n = 0; n <= 11; ++n)
      exact(1, n, std::to_string(n + 1).c_str());
    for (std::uint32_t k = 2; k <= 8; ++k) exact(k, 0, "1");
    exact(2, 1, "4");
    exact(3, 1, "8");
    exact(4, 1, "16");
    exact(5, 1, "32");
    exact(6, 1, "64");
    exact(7, 1, "128");
    exact(8, 1, "256");
    exact(2, 2, "16");
    exact(3, 2, "152");
    exact(4, 2, "2326");
    exact(5, 2, "52132");
    exact(6, 2, "1602420");
    exact(7, 2, "64529264");
    lower(8, 2, "1730000000");
    exact(2, 3, "68");
    exact(3, 3, "5312");
    exact(4, 3, "1395588");
    exact(5, 3, "1031153002");
    lower(6, 3, "230000000");
    exact(2, 4, "312");
    exact(3, 4, "334202");
    lower(4, 4, "730000000");
    exact(2, 5, "1560");
    exact(3, 5, "38450477");
    exact(2, 6, "8528");
    lower(3, 6, "390000000");
    exact(2, 7, "50864");
    exact(2, 8, "329248");
    exact(2, 9, "2298592");
    exact(2, 10, "17203264");
    exact(2, 11, "137289920");
    return t;
  }();
  return table;
}

void CountTable::set(std::uint32_t k, std::uint32_t n, TableEntry entry) {
  entries_[{k, n}] = std::move(entry);
}

TableEntry const* CountTable::find(std::uint32_t k, std::uint32_t n) const {
  auto it = entries_.find({k, n});
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<mpz_class> CountTable::exact_value(std::uint32_t k,
                                                 std::uint32_t n) const {
  if (TableEntry const* e = find(k, n)) {
    if (e->exact) return e->value;
    return std::nullopt;
  }
  if (k == 1) return mpz_class(n + 1);
  if (n == 0) return mpz_class(1);
  if (n == 1 && k < 4096) return uint_pow(2, k);
  return std::nullopt;
}

std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, TableEntry>>
CountTable::sorted_entries() const {
  std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, TableEntry>>
      out(entries_.begin(), entries_.end());
  return out;
}

std::string CountTable::to_csv() const {
  std::ostringstream out;
  out << "k,n,value,provenance,exactness\n";
  for (auto const& [kn, entry] : entries_) {
    out << kn.first << ',' << kn.second << ',' << entry.value.get_str() << ','
        << (entry.provenance == Provenance::published ? "published"
                                                      : "computed")
        << ',' << (entry.exact ? "exact" : "lower-bound") << '\n';
  }
  return out.str();
}

char const* bound_status_name(BoundStatus s) {
  switch (s) {
    case BoundStatus::holds: return "holds";
    case BoundStatus::violated: return "violated";
    case BoundStatus::not_applicable: return "not-applicable";
    case BoundStatus::unchecked: return "unchecked";
  }
  return "unknown";
}

BoundValue BoundValue::of(mpz_class v) {
  BoundValue out;
  out.is_integer = true;
  out.integer = std::move(v);
  return out;
}

BoundValue BoundValue::of(double v) {
  BoundValue out;
  out.real = v;
  return out;
}

double BoundValue::as_double() const {
  return is_integer ? integer.get_d() : real;
}

std::string BoundValue::to_string() const {
  if (is_integer) return integer.get_str();
  std::ostringstream out;
  out << std::setprecision(12) << real;
  return out.str();
}

double log2_mpz(mpz_class const& value) {
  if (value <= 0) throw input_error("log2 needs a positive value");
  signed long exp = 0;
  double mant = mpz_get_d_2exp(&exp, value.get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp);
}

mpz_class naive_lower_value(std::uint32_t k, std::uint32_t n) {
  if (k < 2) throw input_error("closed form needs k >= 2");
  mpz_class sum = 0;
  mpz_class power = 1;
  for (std::uint32_t j = 0; j <= n; ++j) {
    sum += power;
    power *= k;
  }
  return sum;
}

std::vector<BoundsReport> naive_bounds(std::uint32_t k, std::uint32_t n,
                                       CountTable const& table) {
  if (k < 2)
    return {not_applicable("naive-eq1", k, n, "closed form needs k >= 2"),
            not_applicable("naive-eq2", k, n, "closed form needs k >= 2")};
  mpz_class count_of_short_words = naive_lower_value(k, n);

  BoundsReport lo = base_report("naive-eq1", k, n);
  lo.has_lower = true;
  lo.lower = BoundValue::of(count_of_short_words);
  attach_exact(lo, table);
  judge(lo);

  // The upper bound 2^((k^{n+1}-1)/(k-1)) is never materialized: the
  // report bounds log2 C_k(n) by the exponent instead.
  BoundsReport hi = base_report("naive-eq2", k, n);
  hi.log_scale = true;
  hi.has_upper = true;
  hi.upper = BoundValue::of(count_of_short_words);
  hi.note = "upper value is the exponent of 2";
  attach_exact(hi, table);
  judge(hi);

  return {std::move(lo), std::move(hi)};
}

std::vector<BoundsReport> kppps_bounds(std::uint32_t k, std::uint32_t n,
                                       CountTable const& table) {
  bool even = (n % 2) == 0;
  char const* id = even ? "kppps-even" : "kppps-odd";
  if (k < 2) return {not_applicable(id, k, n, "stated for k > 1 only")};
  if (n == 0)
    return {not_applicable(
        id, k, n,
        "at n = 0 the stated lower bound exceeds log2 C_k(0) = 0")};

  double logk = std::log2(static_cast<double>(k));
  double small = std::pow(static_cast<double>(k), n) /
                 std::pow(3.0, static_cast<double>(n) * n);
  double big = std::pow(3.0, n) * std::pow(static_cast<double>(k), n);

  BoundsReport r = base_report(id, k, n);
  r.log_scale = true;
  r.has_lower = true;
  r.has_upper = true;
  if (even) {
    r.lower = BoundValue::of(small * logk);
    r.upper = BoundValue::of(big * logk);
    r.lower_strict = false;
    r.upper_strict = true;
  } else {
    r.lower = BoundValue::of(small);
    r.upper = BoundValue::of(big);
    r.lower_strict = true;
    r.upper_strict = true;
  }
  attach_exact(r, table);
  judge(r);
  return {std::move(r)};
}

std::vector<BoundsReport> main_bounds(std::uint32_t k, std::uint32_t n,
                                      CountTable const& table) {
  if (k < 2 || n < 2)
    return {not_applicable("main-lower", k, n, "stated for k, n > 1"),
            not_applicable("main-upper", k, n, "stated for k, n > 1")};

  double kd = k, nd = n;

  BoundsReport lo = base_report("main-lower", k, n);
  lo.log_scale = true;
  lo.has_lower = true;
  lo.lower_strict = true;
  lo.lower = BoundValue::of(std::pow(nd / kd, kd - 1) * std::log2(nd / kd));
  attach_exact(lo, table);
  judge(lo);

  BoundsReport hi = base_report("main-upper", k, n);
  hi.log_scale = true;
  hi.has_upper = true;
  hi.upper_strict = true;
  hi.upper = BoundValue::of(kd * std::pow((nd + 2 * kd - 3) / (kd - 1), kd - 1) *
                            std::log2(nd) * std::log2(kd));
  attach_exact(hi, table);
  judge(hi);

  return {std::move(lo), std::move(hi)};
}

mpz_class prop3_lower(std::uint32_t k, std::uint32_t n,
                      CountTable const& table) {
  if (k < 2) throw input_error("prop3 lower bound needs k >= 2");
  std::vector<mpz_class> dep(n + 1);
  std::string missing;
  for (std::uint32_t p = 0; p <= n; ++p) {
    if (auto v = exact_dependency(table, k - 1, n - p)) {
      dep[p] = *v;
    } else {
      missing += missing.empty() ? "" : ", ";
      missing += cell_name(k - 1, n - p);
    }
  }
  if (!missing.empty())
    throw input_error("missing exact table entries: " + missing);
  mpz_class sum = 0;
  for (std::uint32_t p = 0; p <= n; ++p) sum += mpz_pow(dep[p], p + 1);
  return sum;
}

mpz_class prop6_upper(std::uint32_t k, std::uint32_t n,
                      CountTable const& table) {
  if (k < 2) throw input_error("prop6 upper bound needs k >= 2");
  std::string missing;
  std::vector<mpz_class> dep(n + 2);  // dep[i] = C_{k-1}(i), i in 1..n+1
  for (std::uint32_t i = 1; i <= n + 1 && n > 0; ++i) {
    if (auto v = exact_dependency(table, k - 1, i)) {
      dep[i] = *v;
    } else {
      missing += missing.empty() ? "" : ", ";
      missing += cell_name(k - 1, i);
    }
  }
  if (!missing.empty())
    throw input_error("missing exact table entries: " + missing);
  mpz_class sum = 1;
  for (std::uint32_t m = 0; m < n; ++m) {
    mpz_class term = uint_pow(k, m + 1);
    term *= mpz_pow(dep[n - m + 1], m);
    term *= dep[n - m];
    sum += term;
  }
  return sum;
}

mpz_class c2_upper(std::uint32_t n) {
  if (n < 2) throw input_error("the two-letter upper bound needs n >= 2");
  // Summing 2 n^m for m < 2n keeps everything integral.
  mpz_class sum = 0;
  mpz_class power = 1;
  for (std::uint32_t m = 0; m < 2 * n; ++m) {
    sum += power;
    power *= n;
  }
  return 2 * sum;
}

std::vector<BoundsReport> prop3_report(std::uint32_t k, std::uint32_t n,
                                       CountTable const& table) {
  if (k < 2) return {not_applicable("prop3", k, n, "needs k >= 2")};
  BoundsReport r = base_report("prop3", k, n);
  try {
    r.has_lower = true;
    r.lower = BoundValue::of(prop3_lower(k, n, table));
  } catch (input_error const& e) {
    return {not_applicable("prop3", k, n, e.what())};
  }
  attach_exact(r, table);
  judge(r);
  return {std::move(r)};
}

std::vector<BoundsReport> prop6_report(std::uint32_t k, std::uint32_t n,
                                       CountTable const& table) {
  if (k < 2) return {not_applicable("prop6", k, n, "needs k >= 2")};
  BoundsReport r = base_report("prop6", k, n);
  try {
    r.has_upper = true;
    r.upper = BoundValue::of(prop6_upper(k, n, table));
  } catch (input_error const& e) {
    return {not_applicable("prop6", k, n, e.what())};
  }
  attach_exact(r, table);
  judge(r);
  return {std::move(r)};
}

std::vector<BoundsReport> c2_upper_report(std::uint32_t k, std::uint32_t n,
                                          CountTable const& table) {
  if (k != 2 || n < 2)
    return {not_applicable("eq5-c2", k, n, "stated for k = 2, n >= 2")};
  BoundsReport r = base_report("eq5-c2", k, n);
  r.has_upper = true;
  r.upper = BoundValue::of(c2_upper(n));
  attach_exact(r, table);
  judge(r);
  return {std::move(r)};
}

std::vector<BoundsReport> kppps_recurrence_check(CountTable const& table) {
  std::vector<BoundsReport> out;
  auto entries = table.sorted_entries();
  for (auto const& [kn, entry] : entries) {
    if (!entry.exact) continue;
    auto [k, n] = kn;

    // Lower recurrence: source (k, n), targets (k + l, n + 2) for l >= 1.
    for (auto const& [kn2, target] : entries) {
      if (!target.exact) continue;
      auto [kt, nt] = kn2;
      if (nt != n + 2 || kt < k + 1) continue;
      std::uint32_t l = kt - k;
      BoundsReport r = base_report("kppps-rec-lower", kt, nt);
      r.has_lower = true;
      r.lower = BoundValue::of(mpz_pow(entry.value, l + 2));
      r.has_exact = true;
      r.exact_value = target.value;
      r.note = "from " + cell_name(k, n) + " with l = " + std::to_string(l);
      judge(r);
      out.push_back(std::move(r));
    }

    // Upper recurrence: source (k, n), target (k, n + 2).
    if (TableEntry const* target = table.find(k, n + 2);
        target && target->exact) {
      BoundsReport r = base_report("kppps-rec-upper", k, n + 2);
      r.has_upper = true;
      r.upper = BoundValue::of(uint_pow(k + 1, 2ul * k) *
                               mpz_pow(entry.value, 2ul * k - 1));
      r.has_exact = true;
      r.exact_value = target->value;
      r.note = "from " + cell_name(k, n);
      judge(r);
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<BoundsReport> all_bounds(std::uint32_t k, std::uint32_t n,
                                     CountTable const& table) {
  std::vector<BoundsReport> out;
  for (auto&& r : naive_bounds(k, n, table)) out.push_back(std::move(r));
  for (auto&& r : kppps_bounds(k, n, table)) out.push_back(std::move(r));
  for (auto&& r : main_bounds(k, n, table)) out.push_back(std::move(r));
  for (auto&& r : prop3_report(k, n, table)) out.push_back(std::move(r));
  for (auto&& r : prop6_report(k, n, table)) out.push_back(std::move(r));
  for (auto&& r : c2_upper_report(k, n, table)) out.push_back(std::move(r));
  return out;
}

double F(std::uint32_t k, double x) {
  if (k < 1) throw input_error("F is defined for k >= 1");
  double kd = k;
  return std::pow((x + 2 * kd - 1) / kd, kd);
}

double G(std::uint32_t k, double x, double y) {
  return (y + 1) * F(k, x - y + 1);
}

double g_maximizer(std::uint32_t k, double x) {
  return (static_cast<double>(k) + x) / (static_cast<double>(k) + 1);
}

AppendixCheck appendix_inequality_check(std::uint32_t k, std::uint32_t n) {
  if (k < 2 || n < 2)
    throw input_error("the appendix inequality is stated for k, n >= 2");
  AppendixCheck out;
  out.holds = true;
  out.y_max = g_maximizer(k - 1, static_cast<double>(n));
  out.worst_margin = std::numeric_limits<double>::infinity();
  double rhs = F(k, static_cast<double>(n));
  for (std::uint32_t m = 0; m < n; ++m) {
    double lhs = G(k - 1, static_cast<double>(n), static_cast<double>(m));
    double margin = rhs - lhs;
    if (margin < out.worst_margin) {
      out.worst_margin = margin;
      out.worst_m = m;
    }
    if (lhs > rhs) out.holds = false;
  }
  return out;
}

std::string bounds_to_json(std::vector<BoundsReport> const& reports) {
  nlohmann::ordered_json arr = nlohmann::json::array();
  for (auto const& r : reports) {
    nlohmann::ordered_json doc;
    doc["bound_id"] = r.bound_id;
    doc["k"] = r.k;
    doc["n"] = r.n;
    doc["scale"] = r.log_scale ? "log2-count" : "count";
    if (r.has_lower) {
      if (r.lower.is_integer)
        doc["lower"] = r.lower.integer.get_str();
      else
        doc["lower"] = r.lower.real;
      doc["lower_strict"] = r.lower_strict;
    }
    if (r.has_upper) {
      if (r.upper.is_integer)
        doc["upper"] = r.upper.integer.get_str();
      else
        doc["upper"] = r.upper.real;
      doc["upper_strict"] = r.upper_strict;
    }
    if (r.has_exact) {
      doc["exact_value"] = r.exact_value.get_str();
      if (r.log_scale) doc["log2_exact"] = log2_mpz(r.exact_value);
    }
    doc["satisfied"] = bound_status_name(r.satisfied);
    if (r.satisfied == BoundStatus::holds ||
        r.satisfied == BoundStatus::violated)
      doc["margin"] = r.margin;
    if (!r.note.empty()) doc["note"] = r.note;
    arr.push_back(std::move(doc));
  }
  return arr.dump(2);
}

std::string bounds_to_text(std::vector<BoundsReport> const& reports) {
  std::vector<std::array<std::string, 7>> rows;
  rows.push_back({"bound", "k", "n", "lower", "upper", "status", "margin"});
  for (auto const& r : reports) {
    std::array<std::string, 7> row;
    row[0] = r.bound_id;
    row[1] = std::to_string(r.k);
    row[2] = std::to_string(r.n);
    row[3] = r.has_lower ? r.lower.to_string() : "-";
    row[4] = r.has_upper ? r.upper.to_string() : "-";
    row[5] = bound_status_name(r.satisfied);
    if (r.satisfied == BoundStatus::holds ||
        r.satisfied == BoundStatus::violated) {
      std::ostringstream m;
      m << std::setprecision(6) << r.margin;
      row[6] = m.str();
    } else {
      row[6] = "-";
    }
    rows.push_back(std::move(row));
  }
  std::array<std::size_t, 7> width{};
  for (auto const& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i)
      width[i] = std::max(width[i], row[i].size());
  std::ostringstream out;
  for (auto const& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << std::left << std::setw(static_cast<int>(width[i])) << row[i];
      out << (i + 1 == row.size() ? "" : "  ");
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace simcon
