// Copyright (c) 2026 the heavytail authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "heavytail/put_tail_down.hpp"

using namespace heavytail;
using Catch::Approx;

TEST_CASE("construction enforces a symmetric finite-variance base", "[ptd]") {
  REQUIRE_THROWS_AS(make_put_tail_down(Exponential{1.0}, 0.5), validation_error);
  REQUIRE_THROWS_AS(make_put_tail_down(ParetoI{2.0}, 0.5), validation_error);
  REQUIRE_THROWS_AS(make_put_tail_down(StrictlyStable{1.5}, 0.5), validation_error);
  REQUIRE_THROWS_AS(make_put_tail_down(SymmetricPareto{2.0}, 0.5), validation_error);
  REQUIRE_THROWS_AS(make_put_tail_down(Laplace{1.0}, 0.0), validation_error);
  REQUIRE_THROWS_AS(make_put_tail_down(Laplace{1.0}, 1.0), validation_error);
  REQUIRE_NOTHROW(make_put_tail_down(SymmetricPareto{3.0}, 0.5));
  REQUIRE_NOTHROW(make_put_tail_down(Uniform{-1.0, 1.0}, 0.25));
}

TEST_CASE("near-total mixing is almost surely the atom", "[ptd]") {
  const auto spec = make_put_tail_down(Laplace{1.0}, 0.999);
  SampleBatch batch = sample_ptd(spec, 1000, 42);
  std::size_t zeros = 0;
  for (double v : batch.values)
    if (v == 0.0) ++zeros;
  REQUIRE(zeros >= 990);  // >= 99% of draws
}

TEST_CASE("mixture variance shrinks by 1 - p", "[ptd][slow]") {
  const auto spec = make_put_tail_down(Laplace{1.0}, 0.5);
  REQUIRE(mixture_variance(spec) == Approx(1.0).epsilon(1e-15));  // (1-p) * 2
  SampleBatch batch = sample_ptd(spec, 1000000, 7);
  REQUIRE(variance_of(batch.values) == Approx(1.0).epsilon(0.01));
}

TEST_CASE("variance identity holds for every base across the p grid", "[ptd]") {
  const std::vector<DistributionSpec> bases{Laplace{1.0}, Normal{2.0}, SymmetricPareto{3.0},
                                            Uniform{-1.0, 1.0}, StrictlyStable{2.0},
                                            make_empirical({-2.0, -1.0, 1.0, 2.0}),
                                            Degenerate{0.0}};
  for (const auto& base : bases) {
    for (double p : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
      const auto spec = make_put_tail_down(base, p);
      REQUIRE(mixture_variance(spec) == (1.0 - p) * spec.base_sigma2);
      REQUIRE(*variance(as_distribution(spec)) ==
              Catch::Approx((1.0 - p) * spec.base_sigma2).epsilon(1e-15));
    }
  }
}

TEST_CASE("smoothing replaces the atom by a narrow uniform", "[ptd]") {
  const auto spec = make_put_tail_down(Laplace{1.0}, 0.5, 0.01);
  SampleBatch batch = sample_ptd(spec, 50000, 4);
  std::size_t near_zero = 0;
  for (double v : batch.values) {
    REQUIRE(v != 0.0);  // no exact zeros left
    if (std::abs(v) <= 0.01) ++near_zero;
  }
  // p + (1-p) P(|base| <= 0.01) ~ 0.505
  REQUIRE(static_cast<double>(near_zero) / 50000.0 == Approx(0.505).margin(0.01));
  // beyond the smoothing support the tail is exactly (1-p) times the base tail
  REQUIRE(survival(as_distribution(spec), 0.01) ==
          Approx(0.5 * survival(Laplace{1.0}, 0.01)).epsilon(1e-14));
}

TEST_CASE("exact exceedance probability for the laplace base", "[ptd]") {
  const auto spec = make_put_tail_down(Laplace{1.0}, 0.5);
  // sigma = sqrt(2), sigma_p = 1; P(|Y| > 3 sigma_p) = 2 * 0.5 * exp(-3)/2
  REQUIRE(outlier_prob_exact(spec, 3.0) == Approx(std::exp(-3.0) / 2.0).epsilon(1e-12));

  // vanishing p recovers the base two-sided tail at k*sigma
  const auto barely = make_put_tail_down(Laplace{1.0}, 1e-13);
  const double base_tail = survival(Laplace{1.0}, 3.0 * std::sqrt(2.0));
  REQUIRE(outlier_prob_exact(barely, 3.0) == Approx(base_tail).epsilon(1e-10));
  REQUIRE(base_tail == Approx(std::exp(-3.0 * std::sqrt(2.0))).epsilon(1e-14));

  // the mixed law flags more than the base at this threshold
  REQUIRE(outlier_prob_exact(spec, 3.0) > base_tail);
}

TEST_CASE("exact evaluation refuses unsupported specs", "[ptd]") {
  const auto smoothed = make_put_tail_down(Laplace{1.0}, 0.5, 0.01);
  REQUIRE_THROWS_AS(outlier_prob_exact(smoothed, 3.0), model_error);
  const auto empirical_base = make_put_tail_down(make_empirical({-1.0, 1.0}), 0.5);
  REQUIRE_NOTHROW(outlier_prob_exact(empirical_base, 3.0));  // step law is analytic
}

TEST_CASE("sufficiency condition at large and small thresholds", "[ptd]") {
  const auto laplace = make_put_tail_down(Laplace{1.0}, 0.5);
  REQUIRE(check_condition_4a(laplace, 20.0).holds);

  // hand evaluation at k = 0.1: lhs = 0.25 exp(-0.1), rhs = 0.5 exp(-0.1 sqrt(2))
  const auto small = check_condition_4a(laplace, 0.1);
  REQUIRE(small.lhs == Approx(0.25 * std::exp(-0.1)).epsilon(1e-12));
  REQUIRE(small.rhs == Approx(0.5 * std::exp(-0.1 * std::sqrt(2.0))).epsilon(1e-12));
  REQUIRE(small.holds == (small.lhs > small.rhs));
  REQUIRE_FALSE(small.holds);

  const auto pareto = make_put_tail_down(SymmetricPareto{3.0}, 0.5);
  REQUIRE(check_condition_4a(pareto, 1000.0).holds);
}

TEST_CASE("power-tail sides approach the (1-p)^(1-alpha/2) ratio", "[ptd]") {
  const auto spec = make_put_tail_down(SymmetricPareto{3.0}, 0.5);
  const auto cmp = check_condition_4a(spec, 1e4);
  const double limit = std::pow(0.5, 1.0 - 1.5);  // sqrt(2)
  REQUIRE(cmp.lhs / cmp.rhs == Approx(limit).epsilon(0.05));
  REQUIRE(limit == Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("monte carlo rates order like the exact probabilities", "[ptd][slow]") {
  const auto spec = make_put_tail_down(Laplace{1.0}, 0.5);
  const auto mc = more_outliers_mc(spec, 3.0, 100000, 30, 2718);
  REQUIRE(mc.trials == 30);
  REQUIRE(mc.ptd_wins >= 27);  // >= 90% of trials
  REQUIRE(mc.rate_ptd == Approx(std::exp(-3.0) / 2.0).margin(0.003));
  REQUIRE(mc.rate_base == Approx(std::exp(-3.0 * std::sqrt(2.0))).margin(0.003));
  REQUIRE(mc.rate_ptd > mc.rate_base);
}

TEST_CASE("vanishing p leaves the rates indistinguishable", "[ptd]") {
  const auto spec = make_put_tail_down(Laplace{1.0}, 1e-6);
  const auto mc = more_outliers_mc(spec, 3.0, 100000, 10, 5);
  // 3 standard errors of a rate difference at n = 1e5
  const double se = std::sqrt(2.0 * 0.015 / 100000.0);
  REQUIRE(std::abs(mc.rate_ptd - mc.rate_base) <= 3.0 * se);
}

TEST_CASE("normal base verdict matches the Monte Carlo ordering", "[ptd]") {
  const auto spec = make_put_tail_down(Normal{1.0}, 0.9);
  const auto cmp = check_condition_4a(spec, 3.0);
  const auto mc = more_outliers_mc(spec, 3.0, 100000, 30, 11);
  REQUIRE(cmp.holds);
  REQUIRE(mc.ptd_wins >= 27);
}

TEST_CASE("smoothed and atomic mixtures agree within Monte Carlo error", "[ptd]") {
  const auto atom = make_put_tail_down(Laplace{1.0}, 0.5);
  const auto smooth = make_put_tail_down(Laplace{1.0}, 0.5, 1e-3);
  const auto rate_atom = outlier_rate(sample_ptd(atom, 100000, 77), 3.0).rate;
  const auto rate_smooth = outlier_rate(sample_ptd(smooth, 100000, 77), 3.0).rate;
  const double se = std::sqrt(2.0 * 0.025 / 100000.0);
  REQUIRE(std::abs(rate_atom - rate_smooth) <= 3.0 * se);
}
