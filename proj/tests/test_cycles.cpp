#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "cycles.hpp"
#include "oracles.hpp"

using degwalk::cycle_ratio;
using degwalk::cycle_union_count;

TEST_CASE("small cycle-union counts are frozen") {
  CHECK(cycle_union_count(0).exact_decimal == "1");
  CHECK(cycle_union_count(1).exact_decimal == "0");
  CHECK(cycle_union_count(2).exact_decimal == "0");
  CHECK(cycle_union_count(3).exact_decimal == "1");
  CHECK(cycle_union_count(4).exact_decimal == "3");
  CHECK(cycle_union_count(5).exact_decimal == "12");
  CHECK(cycle_union_count(6).exact_decimal == "70");
  CHECK(cycle_union_count(7).exact_decimal == "465");
  CHECK(cycle_union_count(8).exact_decimal == "3507");
}

TEST_CASE("counts agree with brute-force 2-regular enumeration") {
  for (int t = 0; t <= 8; ++t) {
    auto c = cycle_union_count(t);
    REQUIRE(c.has_exact);
    CHECK(c.exact_decimal == std::to_string(oracle::two_regular_count(t)));
  }
}

TEST_CASE("log values are consistent with the exact table") {
  for (int64_t t : {3, 10, 30, 100, 300, 500}) {
    auto c = cycle_union_count(t);
    REQUIRE(c.has_exact);
    // Recompute the log from the decimal string's leading digits.
    const std::string& s = c.exact_decimal;
    double lead = std::stod(s.substr(0, std::min<size_t>(15, s.size())));
    double log10v =
        std::log10(lead) + static_cast<double>(s.size()) -
        std::min<double>(15.0, static_cast<double>(s.size()));
    CHECK(c.log_value == doctest::Approx(log10v * std::log(10.0)).epsilon(1e-9));
  }
}

TEST_CASE("log-space extension continues the exact table smoothly") {
  auto exact_end = cycle_union_count(500);
  auto beyond = cycle_union_count(501);
  CHECK(exact_end.has_exact);
  CHECK_FALSE(beyond.has_exact);
  double step = beyond.log_value - exact_end.log_value;
  CHECK(step == doctest::Approx(std::log(cycle_ratio(500))).epsilon(1e-9));
  CHECK(cycle_union_count(20000).log_value > cycle_union_count(19999).log_value);
  CHECK_THROWS_AS(cycle_union_count(20001), std::length_error);
  CHECK_THROWS_AS(cycle_union_count(-1), std::invalid_argument);
}

TEST_CASE("consecutive ratio approaches t (1 + 1/(2t))") {
  CHECK(cycle_ratio(6) == doctest::Approx(465.0 / 70.0));
  for (int64_t t : {200, 1000, 5000}) {
    double expect = static_cast<double>(t) * (1.0 + 1.0 / (2.0 * static_cast<double>(t)));
    CHECK(cycle_ratio(t) == doctest::Approx(expect).epsilon(1e-4));
  }
}
