// Acceptance gate: the eight release criteria, one verdict line each.
// Exits nonzero if any criterion fails.  Time limits and tolerances are
// pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "enumeration.hpp"
#include "verify.hpp"
#include "word.hpp"

using namespace simcon;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

EnumerationConfig config_for(std::uint32_t k, std::uint32_t n) {
  EnumerationConfig cfg;
  cfg.k = k;
  cfg.n = n;
  return cfg;
}

struct Cell {
  std::uint32_t k, n;
  long value;
};

// The ten core reference cells.
constexpr Cell kCoreCells[] = {
    {2, 2, 16},   {2, 3, 68},     {2, 4, 312},  {2, 5, 1560}, {2, 6, 8528},
    {2, 7, 50864}, {3, 2, 152},   {3, 3, 5312}, {4, 2, 2326}, {5, 2, 52132},
};

bool criterion_closed_forms(std::string& detail) {
  auto start = Clock::now();
  for (std::uint32_t n = 0; n <= 50; ++n) {
    if (count_classes(config_for(1, n)).total_classes != n + 1) {
      detail = "one-letter count wrong at n=" + std::to_string(n);
      return false;
    }
  }
  for (std::uint32_t k = 1; k <= 8; ++k) {
    if (count_classes(config_for(k, 0)).total_classes != 1) {
      detail = "cap-zero count wrong at k=" + std::to_string(k);
      return false;
    }
  }
  for (std::uint32_t k = 1; k <= 10; ++k) {
    if (count_classes(config_for(k, 1)).total_classes != mpz_class(1) << k) {
      detail = "cap-one count wrong at k=" + std::to_string(k);
      return false;
    }
  }
  double elapsed = seconds_since(start);
  if (elapsed >= 10.0) {
    detail = "took " + std::to_string(elapsed) + "s, limit 10s";
    return false;
  }
  return true;
}

bool criterion_core_cells(std::string& detail) {
  for (auto const& c : kCoreCells) {
    auto start = Clock::now();
    EnumerationReport r = count_classes(config_for(c.k, c.n));
    double elapsed = seconds_since(start);
    std::string cell =
        "(" + std::to_string(c.k) + "," + std::to_string(c.n) + ")";
    if (!r.exact() || r.total_classes != c.value) {
      detail = "cell " + cell + " produced " + r.total_classes.get_str() +
               ", expected " + std::to_string(c.value);
      return false;
    }
    if (elapsed >= 300.0) {
      detail = "cell " + cell + " took " + std::to_string(elapsed) + "s";
      return false;
    }
  }
  return true;
}

bool criterion_stretch_cells(std::string& detail) {
  constexpr Cell stretch[] = {{2, 8, 329248}, {3, 4, 334202}};
  for (auto const& c : stretch) {
    EnumerationConfig cfg = config_for(c.k, c.n);
    cfg.time_budget_seconds = 1790.0;  // 30-minute gate, less a margin
    cfg.worker_count = 0;              // all cores
    EnumerationReport r = count_classes(cfg);
    std::string cell =
        "(" + std::to_string(c.k) + "," + std::to_string(c.n) + ")";
    if (!r.exact()) {
      detail = "cell " + cell + " did not finish inside the budget";
      return false;
    }
    if (r.total_classes != c.value) {
      detail = "cell " + cell + " produced " + r.total_classes.get_str() +
               ", expected " + std::to_string(c.value);
      return false;
    }
  }
  return true;
}

bool criterion_oracle(std::string& detail) {
  auto start = Clock::now();
  constexpr std::pair<std::uint32_t, std::uint32_t> grid[] = {
      {1, 1}, {1, 2}, {1, 3}, {1, 4}, {2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2},
  };
  for (auto [k, n] : grid) {
    OracleReport r = verify_against_oracle(k, n);
    if (!r.passed) {
      detail = "oracle (" + std::to_string(k) + "," + std::to_string(n) +
               "): " + r.failure;
      return false;
    }
  }
  double elapsed = seconds_since(start);
  if (elapsed >= 120.0) {
    detail = "took " + std::to_string(elapsed) + "s, limit 120s";
    return false;
  }
  return true;
}

bool criterion_property_suites(std::string& detail) {
  SuiteConfig cfg;  // pinned defaults: 1000 samples, fixed seed
  SuiteReport report = run_property_suites(cfg);
  for (auto const& s : report.suites) {
    if (!s.passed) {
      detail = s.name + ": " + s.first_failure;
      return false;
    }
  }
  return report.all_passed();
}

bool criterion_bounds(std::string& detail) {
  CountTable const& table = CountTable::embedded();
  std::size_t held = 0;
  for (auto const& [kn, entry] : table.sorted_entries()) {
    if (!entry.exact) continue;
    for (auto const& r : all_bounds(kn.first, kn.second, table)) {
      if (r.satisfied == BoundStatus::violated) {
        detail = r.bound_id + " violated at (" + std::to_string(r.k) + "," +
                 std::to_string(r.n) + ")";
        return false;
      }
      if (r.satisfied == BoundStatus::holds) ++held;
    }
  }
  if (held < 150) {  // the families must actually engage, not skip
    detail = "only " + std::to_string(held) + " bound instances were checked";
    return false;
  }
  for (std::uint32_t n = 2; n <= 8; ++n) {
    if (c2_upper(n) < *table.exact_value(2, n)) {
      detail = "two-letter ceiling fails at n=" + std::to_string(n);
      return false;
    }
  }
  auto recs = kppps_recurrence_check(table);
  if (recs.empty()) {
    detail = "no recurrence instances were found";
    return false;
  }
  for (auto const& r : recs) {
    if (r.satisfied != BoundStatus::holds) {
      detail = r.bound_id + " fails at (" + std::to_string(r.k) + "," +
               std::to_string(r.n) + ")";
      return false;
    }
  }
  return true;
}

bool criterion_appendix(std::string& detail) {
  auto start = Clock::now();
  // Peak identity, to relative tolerance 1e-9.
  for (std::uint32_t k = 1; k <= 8; ++k) {
    for (std::uint32_t x = 0; x <= 64; ++x) {
      double lhs = G(k, x, g_maximizer(k, x));
      double rhs = F(k + 1, x);
      if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(rhs))) {
        detail = "peak identity off at k=" + std::to_string(k) +
                 " x=" + std::to_string(x);
        return false;
      }
    }
  }
  // Unimodality: strictly up before the peak, strictly down after.
  for (std::uint32_t k = 1; k <= 6; ++k) {
    for (double x : {2.0, 5.0, 11.0, 31.0}) {
      double peak = g_maximizer(k, x);
      double prev = G(k, x, 0.0);
      for (double y = 0.05; y <= x + 1e-9; y += 0.05) {
        double cur = G(k, x, y);
        bool before = y <= peak;
        if (before && cur <= prev - 1e-12) {
          detail = "not increasing before the peak at k=" +
                   std::to_string(k) + " y=" + std::to_string(y);
          return false;
        }
        if (!before && y - 0.05 >= peak && cur >= prev + 1e-12) {
          detail = "not decreasing after the peak at k=" + std::to_string(k) +
                   " y=" + std::to_string(y);
          return false;
        }
        prev = cur;
      }
    }
  }
  // The per-step comparison on the documented grid.
  for (std::uint32_t k = 2; k <= 6; ++k) {
    for (std::uint32_t n = 2; n <= 12; ++n) {
      if (!appendix_inequality_check(k, n).holds) {
        detail = "per-step inequality fails at k=" + std::to_string(k) +
                 " n=" + std::to_string(n);
        return false;
      }
      double log2n = std::log2(static_cast<double>(n));
      if (!(n + log2n < F(k, n) * log2n)) {
        detail = "growth comparison fails at k=" + std::to_string(k) +
                 " n=" + std::to_string(n);
        return false;
      }
    }
  }
  double elapsed = seconds_since(start);
  if (elapsed >= 5.0) {
    detail = "took " + std::to_string(elapsed) + "s, limit 5s";
    return false;
  }
  return true;
}

bool criterion_determinism(std::string& detail) {
  for (auto const& c : kCoreCells) {
    EnumerationConfig base = config_for(c.k, c.n);
    EnumerationReport reference = count_classes(base);

    EnumerationConfig threaded = base;
    threaded.worker_count = 0;  // all cores
    EnumerationConfig fingerprint = base;
    fingerprint.mode = KeyMode::fingerprint;
    EnumerationConfig both = fingerprint;
    both.worker_count = 0;

    for (EnumerationConfig const& cfg : {threaded, fingerprint, both}) {
      EnumerationReport r = count_classes(cfg);
      if (r.per_length != reference.per_length ||
          r.total_classes != reference.total_classes) {
        detail = "run variants diverge on (" + std::to_string(c.k) + "," +
                 std::to_string(c.n) + ")";
        return false;
      }
    }
  }
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    char const* label;
    bool (*check)(std::string&);
  };
  constexpr Criterion criteria[] = {
      {"closed-form counts", criterion_closed_forms},
      {"core reference cells", criterion_core_cells},
      {"extended reference cells", criterion_stretch_cells},
      {"brute-force oracle agreement", criterion_oracle},
      {"randomized property suites", criterion_property_suites},
      {"bound sandwich on exact cells", criterion_bounds},
      {"growth-function numerics", criterion_appendix},
      {"thread and key-mode determinism", criterion_determinism},
  };
  int failures = 0;
  int index = 0;
  for (auto const& c : criteria) {
    ++index;
    std::string detail;
    auto start = Clock::now();
    bool ok = c.check(detail);
    double elapsed = seconds_since(start);
    if (ok) {
      std::printf("PASS  criterion %d: %s  (%.2fs)\n", index, c.label,
                  elapsed);
    } else {
      std::printf("FAIL  criterion %d: %s  (%.2fs)  %s\n", index, c.label,
                  elapsed, detail.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
