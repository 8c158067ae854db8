// Copyright (c) 2026 the heavytail authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "heavytail/statistics.hpp"

using namespace heavytail;
using Catch::Approx;

TEST_CASE("mean, variance and median hand cases", "[stats]") {
  std::vector<double> v{0.0, 0.0, 0.0, 10.0};
  REQUIRE(mean_of(v) == 2.5);
  REQUIRE(variance_of(v) == Approx(18.75).epsilon(1e-15));  // 1/n divisor
  REQUIRE(median_of({1, 2, 3}) == 2.0);
  REQUIRE(median_of({1, 2, 3, 10}) == 2.5);
  REQUIRE_THROWS_AS(mean_of(std::vector<double>{}), validation_error);
}

TEST_CASE("normal tail values", "[stats]") {
  REQUIRE(standard_normal_cdf(0.0) == Approx(0.5).epsilon(1e-15));
  // 2*Phi(-2) = 0.0455..., the classical two-sided normal exceedance
  REQUIRE(2.0 * standard_normal_sf(2.0) == Approx(0.04550026389635842).epsilon(1e-12));
  REQUIRE(2.0 * standard_normal_sf(3.0) == Approx(0.0026997960632601866).epsilon(1e-12));
}

TEST_CASE("one-sample KS statistic hand case", "[stats]") {
  std::vector<double> sample{0.25, 0.5, 0.75};
  const double d = ks_statistic(sample, [](double x) { return x; });
  REQUIRE(d == Approx(0.25).epsilon(1e-15));
}

TEST_CASE("two-sample KS statistic", "[stats]") {
  std::vector<double> a{1.0, 2.0, 3.0};
  REQUIRE(ks_two_sample(a, a) == 0.0);
  std::vector<double> lo{1.0, 2.0}, hi{3.0, 4.0};
  REQUIRE(ks_two_sample(lo, hi) == 1.0);
  std::vector<double> x{1.0, 3.0}, y{2.0, 4.0};
  REQUIRE(ks_two_sample(x, y) == Approx(0.5).epsilon(1e-15));
}

TEST_CASE("two-sample KS critical value matches the classical constant", "[stats]") {
  // c(0.01) = sqrt(-ln(0.005)/2) ~= 1.6276
  const double crit = ks_two_sample_critical(100000, 100000, 0.01);
  REQUIRE(crit == Approx(1.6276 * std::sqrt(2.0 / 100000.0)).epsilon(1e-4));
}

TEST_CASE("log-log tail slope recovers an exact power law", "[stats]") {
  // x_i chosen so the plotting-position survival is exactly x^(-2)
  const std::size_t n = 2000;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = 1.0 - static_cast<double>(i + 1) / (n + 1.0);
    x[i] = std::pow(s, -0.5);
  }
  const auto fit = loglog_tail_slope(x, 1e-3, 0.5);
  REQUIRE(fit.slope == Approx(-2.0).epsilon(1e-9));
  REQUIRE(fit.intercept == Approx(0.0).margin(1e-9));
  REQUIRE(fit.points > 100);
}

TEST_CASE("log-log tail slope rejects bad windows", "[stats]") {
  std::vector<double> x(100, 1.0);
  REQUIRE_THROWS_AS(loglog_tail_slope(x, 0.5, 0.4), validation_error);
  REQUIRE_THROWS_AS(loglog_tail_slope(x, 1e-9, 1e-8), model_error);  // no points in window
}
