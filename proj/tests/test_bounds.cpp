#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "error.hpp"

using namespace simcon;

namespace {

BoundsReport const& by_id(std::vector<BoundsReport> const& reports,
                          std::string const& id) {
  for (auto const& r : reports) {
    if (r.bound_id == id) return r;
  }
  std::string missing = "missing report " + id;
  REQUIRE_MESSAGE(false, missing);
  return reports.front();
}

}  // namespace

TEST_CASE("the embedded reference table, verbatim") {
  static char const* kExpected =
      "k,n,value,provenance,exactness\n"
      "1,0,1,published,exact\n"
      "1,1,2,published,exact\n"
      "1,2,3,published,exact\n"
      "1,3,4,published,exact\n"
      "1,4,5,published,exact\n"
      "1,5,6,published,exact\n"
      "1,6,7,published,exact\n"
      "1,7,8,published,exact\n"
      "1,8,9,published,exact\n"
      "1,9,10,published,exact\n"
      "1,10,11,published,exact\n"
      "1,11,12,published,exact\n"
      "2,0,1,published,exact\n"
      "2,1,4,published,exact\n"
      "2,2,16,published,exact\n"
      "2,3,68,published,exact\n"
      "2,4,312,published,exact\n"
      "2,5,1560,published,exact\n"
      "2,6,8528,published,exact\n"
      "2,7,50864,published,exact\n"
      "2,8,329248,published,exact\n"
      "2,9,2298592,published,exact\n"
      "2,10,17203264,published,exact\n"
      "2,11,137289920,published,exact\n"
      "3,0,1,published,exact\n"
      "3,1,8,published,exact\n"
      "3,2,152,published,exact\n"
      "3,3,5312,published,exact\n"
      "3,4,334202,published,exact\n"
      "3,5,38450477,published,exact\n"
      "3,6,390000000,published,lower-bound\n"
      "4,0,1,published,exact\n"
      "4,1,16,published,exact\n"
      "4,2,2326,published,exact\n"
      "4,3,1395588,published,exact\n"
      "4,4,730000000,published,lower-bound\n"
      "5,0,1,published,exact\n"
      "5,1,32,published,exact\n"
      "5,2,52132,published,exact\n"
      "5,3,1031153002,published,exact\n"
      "6,0,1,published,exact\n"
      "6,1,64,published,exact\n"
      "6,2,1602420,published,exact\n"
      "6,3,230000000,published,lower-bound\n"
      "7,0,1,published,exact\n"
      "7,1,128,published,exact\n"
      "7,2,64529264,published,exact\n"
      "8,0,1,published,exact\n"
      "8,1,256,published,exact\n"
      "8,2,1730000000,published,lower-bound\n";
  CHECK(CountTable::embedded().to_csv() == kExpected);
  CHECK(CountTable::embedded().sorted_entries().size() == 50);
}

TEST_CASE("exact lookups fall back to closed forms") {
  CountTable const& t = CountTable::embedded();
  CHECK(t.exact_value(1, 17) == mpz_class(18));
  CHECK(t.exact_value(9, 0) == mpz_class(1));
  CHECK(t.exact_value(9, 1) == mpz_class(512));
  CHECK(t.exact_value(12, 1) == mpz_class(4096));
  CHECK(!t.exact_value(9, 2).has_value());
  CHECK(!t.exact_value(3, 6).has_value());  // stored cell is a lower bound
  CHECK(t.find(9, 1) == nullptr);
  REQUIRE(t.find(3, 6) != nullptr);
  CHECK(!t.find(3, 6)->exact);
}

TEST_CASE("log2 of big integers") {
  CHECK(log2_mpz(mpz_class(1)) == 0.0);
  CHECK(log2_mpz(mpz_class(68)) == doctest::Approx(6.0874628413).epsilon(1e-9));
  mpz_class big = mpz_class(1) << 400;
  CHECK(log2_mpz(big) == doctest::Approx(400.0).epsilon(1e-12));
}

TEST_CASE("counting bound: geometric-sum floor and power-set ceiling") {
  auto reports = naive_bounds(2, 3, CountTable::embedded());
  auto const& lower = by_id(reports, "naive-eq1");
  CHECK(lower.lower.integer == 15);
  CHECK(!lower.log_scale);
  CHECK(lower.satisfied == BoundStatus::holds);
  CHECK(lower.margin == doctest::Approx(53.0));
  auto const& upper = by_id(reports, "naive-eq2");
  CHECK(upper.log_scale);
  CHECK(upper.upper.integer == 15);  // exponent of 2
  CHECK(upper.satisfied == BoundStatus::holds);
  CHECK(upper.margin ==
        doctest::Approx(15.0 - 6.0874628413).epsilon(1e-6));

  for (auto const& r : naive_bounds(1, 4, CountTable::embedded())) {
    CHECK(r.satisfied == BoundStatus::not_applicable);
  }
}

TEST_CASE("log-index sandwich by parity") {
  CountTable const& t = CountTable::embedded();
  {
    auto reports = kppps_bounds(2, 2, t);
    REQUIRE(reports.size() == 1);
    auto const& r = reports.front();
    CHECK(r.bound_id == "kppps-even");
    CHECK(r.log_scale);
    CHECK(!r.lower_strict);  // even caps: the floor is attained-or-exceeded
    CHECK(r.upper_strict);
    CHECK(r.lower.real == doctest::Approx(0.04938271604938271));
    CHECK(r.upper.real == doctest::Approx(36.0));
    CHECK(r.satisfied == BoundStatus::holds);
  }
  {
    auto reports = kppps_bounds(2, 3, t);
    auto const& r = reports.front();
    CHECK(r.bound_id == "kppps-odd");
    CHECK(r.lower_strict);
    CHECK(r.upper_strict);
    CHECK(r.lower.real == doctest::Approx(0.00040644210740232686));
    CHECK(r.upper.real == doctest::Approx(216.0));
    CHECK(r.satisfied == BoundStatus::holds);
  }
  {
    // n = 1: the odd-cap formula gives floor k/3 and ceiling 3k.
    auto reports = kppps_bounds(3, 1, t);
    auto const& r = reports.front();
    CHECK(r.bound_id == "kppps-odd");
    CHECK(r.lower.real == doctest::Approx(1.0));
    CHECK(r.upper.real == doctest::Approx(9.0));
    CHECK(r.satisfied == BoundStatus::holds);  // log2 C_3(1) = 3
  }
  CHECK(kppps_bounds(1, 2, t).front().satisfied ==
        BoundStatus::not_applicable);
  CHECK(kppps_bounds(2, 0, t).front().satisfied ==
        BoundStatus::not_applicable);
}

TEST_CASE("polynomial-exponent window") {
  CountTable const& t = CountTable::embedded();
  {
    auto reports = main_bounds(2, 4, t);
    auto const& lower = by_id(reports, "main-lower");
    auto const& upper = by_id(reports, "main-upper");
    CHECK(lower.lower.real == doctest::Approx(2.0));
    CHECK(upper.upper.real == doctest::Approx(20.0));
    CHECK(lower.satisfied == BoundStatus::holds);
    CHECK(upper.satisfied == BoundStatus::holds);
    CHECK(lower.log_scale);
  }
  {
    auto reports = main_bounds(3, 6, t);
    CHECK(by_id(reports, "main-lower").lower.real == doctest::Approx(4.0));
    CHECK(by_id(reports, "main-upper").upper.real ==
          doctest::Approx(248.89691923686507).epsilon(1e-9));
  }
  for (auto const& r : main_bounds(1, 5, t)) {
    CHECK(r.satisfied == BoundStatus::not_applicable);
  }
  for (auto const& r : main_bounds(4, 1, t)) {
    CHECK(r.satisfied == BoundStatus::not_applicable);
  }
}

TEST_CASE("alphabet-induction floor") {
  CountTable const& t = CountTable::embedded();
  struct Case {
    std::uint32_t k, n;
    char const* value;
  };
  static constexpr Case cases[] = {
      {2, 2, "8"},     {3, 2, "33"},      {2, 0, "1"},
      {4, 2, "217"},   {4, 3, "28929"},   {5, 2, "2583"},
      {5, 3, "6809961"}, {6, 2, "53157"}, {7, 2, "1606517"},
  };
  for (auto const& c : cases) {
    CHECK(prop3_lower(c.k, c.n, t) == mpz_class(c.value));
  }
  for (auto const& c : cases) {
    auto reports = prop3_report(c.k, c.n, t);
    REQUIRE(reports.size() == 1);
    CHECK(reports.front().satisfied == BoundStatus::holds);
  }
  CHECK_THROWS_AS(prop3_lower(1, 2, t), input_error);   // no k-1 column
  CHECK_THROWS_AS(prop3_lower(9, 3, t), input_error);   // C_8(3) unknown
}

TEST_CASE("alphabet-induction ceiling") {
  CountTable const& t = CountTable::embedded();
  struct Case {
    std::uint32_t k, n;
    char const* value;
  };
  static constexpr Case cases[] = {
      {2, 2, "31"},     {3, 2, "625"},      {4, 2, "20065"},
      {4, 3, "24769281"}, {5, 2, "942031"}, {6, 2, "60368857"},
      {3, 4, "3516553"},
  };
  for (auto const& c : cases) {
    CHECK(prop6_upper(c.k, c.n, t) == mpz_class(c.value));
    auto reports = prop6_report(c.k, c.n, t);
    REQUIRE(reports.size() == 1);
    CHECK(reports.front().satisfied == BoundStatus::holds);
  }
  CHECK(prop6_upper(4, 0, t) == 1);
  // C_4(4) is only a lower bound, so the m = 0 term is not instantiable.
  CHECK_THROWS_AS(prop6_upper(5, 3, t), input_error);
  CHECK(prop6_report(5, 3, t).front().satisfied ==
        BoundStatus::not_applicable);
}

TEST_CASE("two-letter explicit ceiling") {
  CountTable const& t = CountTable::embedded();
  CHECK(c2_upper(2) == 30);
  CHECK(c2_upper(3) == 728);
  CHECK(c2_upper(5) == 4882812);
  for (std::uint32_t n = 2; n <= 8; ++n) {
    auto reports = c2_upper_report(2, n, t);
    REQUIRE(reports.size() == 1);
    CHECK(reports.front().satisfied == BoundStatus::holds);
    CHECK(reports.front().upper.integer >= *t.exact_value(2, n));
  }
}

TEST_CASE("recurrence checks across the whole table") {
  auto reports = kppps_recurrence_check(CountTable::embedded());
  CHECK(!reports.empty());
  std::size_t lowers = 0, uppers = 0;
  for (auto const& r : reports) {
    CHECK(r.satisfied == BoundStatus::holds);
    if (r.bound_id == "kppps-rec-lower") ++lowers;
    if (r.bound_id == "kppps-rec-upper") ++uppers;
  }
  CHECK(lowers > 0);
  CHECK(uppers > 0);
  CHECK(lowers + uppers == reports.size());

  // Spot instances: C_2(3) >= C_1(1)^3 and C_2(3) <= 3^4 * C_2(1)^3.
  bool saw_lower = false, saw_upper = false;
  for (auto const& r : reports) {
    if (r.bound_id == "kppps-rec-lower" && r.k == 2 && r.n == 3 &&
        r.lower.integer == 8) {
      saw_lower = true;
    }
    if (r.bound_id == "kppps-rec-upper" && r.k == 2 && r.n == 3) {
      CHECK(r.upper.integer == 5184);
      saw_upper = true;
    }
  }
  CHECK(saw_lower);
  CHECK(saw_upper);
}

TEST_CASE("all families at once, and the violation path") {
  auto reports = all_bounds(2, 2, CountTable::embedded());
  CHECK(reports.size() >= 6);
  for (auto const& r : reports) {
    CHECK(r.satisfied != BoundStatus::violated);
    if (r.satisfied == BoundStatus::holds) CHECK(r.margin >= 0.0);
  }

  // Planting an absurd "exact" value must flip upper bounds to violated
  // with a negative margin.
  CountTable doctored = CountTable::embedded();
  doctored.set(2, 3, TableEntry{mpz_class(1000000000), true,
                                Provenance::computed});
  auto naive = naive_bounds(2, 3, doctored);
  auto const& upper = by_id(naive, "naive-eq2");
  CHECK(upper.satisfied == BoundStatus::violated);
  CHECK(upper.margin ==
        doctest::Approx(15.0 - 29.897352853986263).epsilon(1e-6));
  CHECK(by_id(naive, "naive-eq1").satisfied == BoundStatus::holds);
}

TEST_CASE("growth-function algebra") {
  CHECK(F(3, 4.0) == doctest::Approx(27.0));
  CHECK(F(2, 3.0) == doctest::Approx(9.0));
  CHECK(G(2, 4.0, 2.0) == doctest::Approx(27.0));
  CHECK(g_maximizer(2, 4.0) == doctest::Approx(2.0));

  // The maximizer identity: G at its peak equals the next F.
  for (std::uint32_t k : {1u, 2u, 4u, 8u}) {
    for (double x : {0.0, 1.0, 5.0, 17.0, 64.0}) {
      double y = g_maximizer(k, x);
      CHECK(G(k, x, y) ==
            doctest::Approx(F(k + 1, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("per-step growth inequality on the documented grid") {
  for (std::uint32_t k = 2; k <= 6; ++k) {
    for (std::uint32_t n = 2; n <= 12; ++n) {
      AppendixCheck c = appendix_inequality_check(k, n);
      CHECK(c.holds);
      // The margin is zero exactly when the continuous maximizer lands on
      // an integer split point; otherwise every split is strictly below.
      CHECK(c.worst_margin >= 0.0);
      if (std::floor(c.y_max) == c.y_max) {
        CHECK(c.worst_m == static_cast<std::uint32_t>(c.y_max));
        CHECK(std::abs(c.worst_margin) <= 1e-9);
      } else {
        CHECK(c.worst_margin > 0.0);
      }
      CHECK(c.y_max == doctest::Approx((k - 1 + n) / static_cast<double>(k)));
      CHECK(c.worst_m < n);
    }
  }
  CHECK_THROWS_AS(appendix_inequality_check(1, 4), input_error);
  CHECK_THROWS_AS(appendix_inequality_check(3, 1), input_error);
}

TEST_CASE("report serialization") {
  auto reports = all_bounds(2, 3, CountTable::embedded());
  std::string text = bounds_to_text(reports);
  CHECK(text.find("naive-eq1") != std::string::npos);
  CHECK(text.find("holds") != std::string::npos);
  CHECK(text.find("violated") == std::string::npos);

  auto doc = nlohmann::json::parse(bounds_to_json(reports));
  REQUIRE(doc.is_array());
  CHECK(doc.size() == reports.size());
  bool saw_exact = false;
  for (auto const& row : doc) {
    CHECK(row.contains("bound_id"));
    CHECK(row.contains("satisfied"));
    if (row.contains("log2_exact")) saw_exact = true;
  }
  CHECK(saw_exact);
  CHECK(bounds_to_json(reports) == bounds_to_json(reports));
}
