// Copyright (c) 2026 the heavytail authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "heavytail/tail_bounds.hpp"

using namespace heavytail;
using Catch::Approx;

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

std::vector<double> geomspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  const double ratio = std::pow(hi / lo, 1.0 / static_cast<double>(n - 1));
  double v = lo;
  for (std::size_t i = 0; i < n; ++i, v *= ratio) out[i] = v;
  return out;
}

SurvivalCurve weibull_curve(double shape, const std::vector<double>& grid) {
  std::vector<double> s(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) s[i] = std::exp(-std::pow(grid[i], shape));
  return make_survival_curve(grid, std::move(s));
}

}  // namespace

TEST_CASE("survival curve validation", "[curve]") {
  REQUIRE_THROWS_AS(make_survival_curve({1.0, 1.0}, {0.5, 0.4}), validation_error);
  REQUIRE_THROWS_AS(make_survival_curve({-1.0, 1.0}, {0.5, 0.4}), validation_error);
  REQUIRE_THROWS_AS(make_survival_curve({1.0, 2.0}, {0.4, 0.5}), validation_error);
  REQUIRE_THROWS_AS(make_survival_curve({1.0, 2.0}, {1.5, 0.5}), validation_error);
  REQUIRE_NOTHROW(make_survival_curve({1.0, 2.0}, {0.5, 0.4}));
}

TEST_CASE("cure split inverts the plateau decomposition", "[cure]") {
  const auto grid = linspace(0.1, 8.0, 200);
  std::vector<double> s(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) s[i] = 0.3 + 0.7 * std::exp(-grid[i]);
  const auto curve = make_survival_curve(grid, s);

  const auto zero = cure_split(curve, 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) REQUIRE(zero.values[i] == curve.values[i]);

  const auto proper = cure_split(curve, 0.3);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    REQUIRE(proper.values[i] == Approx(std::exp(-grid[i])).margin(1e-12));
    const double recomposed = 0.3 + 0.7 * proper.values[i];
    REQUIRE(recomposed == Approx(curve.values[i]).margin(1e-12));
  }
}

TEST_CASE("cure split rejects a mass not strictly below the curve", "[cure]") {
  const auto curve = make_survival_curve({1.0, 2.0, 3.0}, {0.3, 0.3, 0.3});
  REQUIRE_THROWS_AS(cure_split(curve, 0.3), validation_error);
  REQUIRE_THROWS_AS(cure_split(curve, 0.5), validation_error);
  REQUIRE_NOTHROW(cure_split(curve, 0.25));
}

TEST_CASE("ifra membership of the classical shapes", "[ifra]") {
  const auto grid = linspace(0.05, 10.0, 400);
  REQUIRE(ifra_check(weibull_curve(1.0, grid)).is_ifra);   // boundary member
  REQUIRE(ifra_check(weibull_curve(2.0, grid)).is_ifra);   // average hazard t
  REQUIRE_FALSE(ifra_check(weibull_curve(0.5, grid)).is_ifra);  // average hazard t^(-1/2)
  REQUIRE(ifra_check(Exponential{2.0}, grid).is_ifra);
}

TEST_CASE("ifra check truncates at the first zero survival", "[ifra]") {
  const auto curve = make_survival_curve({1.0, 2.0, 3.0, 4.0}, {0.5, 0.25, 0.0, 0.0});
  const auto result = ifra_check(curve);
  REQUIRE(result.truncated);
  REQUIRE(result.points_used == 2);
  REQUIRE(result.is_ifra);
}

TEST_CASE("exponential attains the ifra tail bound with equality", "[ifra]") {
  const double s1 = std::exp(-1.0);
  REQUIRE(ifra_tail_bound(s1, 1.0, 1.0) == Approx(s1).epsilon(1e-15));
  REQUIRE(ifra_tail_bound(s1, 1.0, 3.0) == Approx(std::exp(-3.0)).epsilon(1e-12));
  // weibull shape 2 at t=1: bound e^{-2} dominates the truth e^{-4}
  REQUIRE(ifra_tail_bound(std::exp(-1.0), 1.0, 2.0) == Approx(std::exp(-2.0)).epsilon(1e-12));
  REQUIRE(std::exp(-2.0) >= std::exp(-4.0));
  REQUIRE_THROWS_AS(ifra_tail_bound(s1, 2.0, 1.0), validation_error);
  REQUIRE_THROWS_AS(ifra_tail_bound(1.0, 1.0, 2.0), validation_error);
}

TEST_CASE("ifra bound dominates the truth for every tested member", "[ifra]") {
  for (double shape : {1.0, 1.5, 2.0, 3.0}) {
    for (double t : {0.5, 1.0, 2.0}) {
      const double s_t = std::exp(-std::pow(t, shape));
      for (double x = t; x <= 20.0; x += 0.25) {
        const double truth = std::exp(-std::pow(x, shape));
        REQUIRE(ifra_tail_bound(s_t, t, x) >= truth - 1e-12);
      }
    }
  }
}

TEST_CASE("phi validation accepts the stock links and rejects a broken one", "[phi]") {
  REQUIRE_NOTHROW(validate_phi(phi_exp()));
  REQUIRE_NOTHROW(validate_phi(phi_reciprocal()));
  PhiFunction broken = phi_exp();
  broken.value = [](double u) { return 0.9 * std::exp(-u); };
  REQUIRE_THROWS_AS(validate_phi(broken), validation_error);
  PhiFunction wrong_slope = phi_exp();
  wrong_slope.value = [](double u) { return std::exp(-2.0 * u); };
  wrong_slope.inverse = [](double s) { return -0.5 * std::log(s); };
  REQUIRE_THROWS_AS(validate_phi(wrong_slope), validation_error);
}

TEST_CASE("phi inverse round-trips on curve values", "[phi]") {
  const auto phi = phi_exp();
  const auto curve = weibull_curve(2.0, linspace(0.1, 3.0, 50));
  for (double s : curve.values)
    REQUIRE(phi.value(phi.inverse(s)) == Approx(s).margin(1e-10));
}

TEST_CASE("generalized hazard closed forms under the exp link", "[phihazard]") {
  const auto phi = phi_exp();
  // unit exponential: rho = 1, so r(log t) = t
  const auto exp_curve = tabulate_survival(Exponential{1.0}, linspace(0.5, 5.0, 100));
  for (const auto& sample : phi_hazard_rate(exp_curve, phi))
    REQUIRE(sample.rate == Approx(std::exp(sample.log_time)).epsilon(1e-9));

  // pareto: rho = alpha/t, so the generalized rate is the constant alpha
  const double alpha = 1.7;
  const auto grid = geomspace(1.0, 100.0, 300);
  std::vector<double> s(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) s[i] = std::pow(grid[i], -alpha);
  const auto pareto_curve = make_survival_curve(grid, s);
  const auto rates = phi_hazard_rate(pareto_curve, phi);
  for (std::size_t i = 1; i + 1 < rates.size(); ++i)
    REQUIRE(rates[i].rate == Approx(alpha).epsilon(0.01));
}

TEST_CASE("generalized hazard rises for a power law under the reciprocal link", "[phihazard]") {
  // phi^{-1}(S) = t^alpha - 1 for pareto, so the rate alpha e^(alpha u) increases
  const auto grid = geomspace(1.05, 50.0, 200);
  std::vector<double> s(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) s[i] = std::pow(grid[i], -1.5);
  const auto rates = phi_hazard_rate(make_survival_curve(grid, s), phi_reciprocal());
  for (std::size_t i = 1; i < rates.size(); ++i) REQUIRE(rates[i].rate > rates[i - 1].rate);
}

TEST_CASE("central differencing converges at second order", "[phihazard]") {
  // phi = exp link turns S = exp(-t^3) into g(t) = t^3 with g''' = 6:
  // the central-difference error at t=1 is exactly h^2
  auto rho_error_at_one = [](double h) {
    std::vector<double> grid, s;
    for (int i = -3; i <= 3; ++i) {
      grid.push_back(1.0 + h * i);
      s.push_back(std::exp(-std::pow(1.0 + h * i, 3.0)));
    }
    const auto rates = phi_hazard_rate(make_survival_curve(grid, s), phi_exp());
    const double rho = rates[3].rate / 1.0;  // t = 1
    return std::abs(rho - 3.0);
  };
  const double coarse = rho_error_at_one(0.1);
  const double fine = rho_error_at_one(0.05);
  REQUIRE(coarse / fine == Approx(4.0).margin(0.2));
}

TEST_CASE("hazard differencing needs at least three usable points", "[phihazard]") {
  const auto curve = make_survival_curve({1.0, 2.0}, {0.5, 0.4});
  REQUIRE_THROWS_AS(phi_hazard_rate(curve, phi_exp()), model_error);
  const auto zeros = make_survival_curve({1.0, 2.0, 3.0, 4.0}, {0.5, 0.4, 0.0, 0.0});
  REQUIRE_THROWS_AS(phi_hazard_rate(zeros, phi_exp()), model_error);
}

TEST_CASE("power bound boundary and consistency", "[phibound]") {
  const auto phi = phi_exp();
  const double s_v = 0.37;
  // u -> v recovers S(v)
  REQUIRE(phi_ifra_bound(s_v, 2.0, 2.0 * (1.0 + 1e-12), phi) == Approx(s_v).margin(1e-9));
  // exp link formula: u^(log S(v)/log v)
  for (double u : {3.0, 10.0, 500.0}) {
    const double expected = std::pow(u, std::log(s_v) / std::log(2.0));
    REQUIRE(phi_ifra_bound(s_v, 2.0, u, phi) == Approx(expected).epsilon(1e-12));
  }
  REQUIRE_THROWS_AS(phi_ifra_bound(s_v, 2.0, 2.0, phi), validation_error);
  REQUIRE_THROWS_AS(phi_ifra_bound(s_v, 0.9, 2.0, phi), validation_error);
  REQUIRE_THROWS_AS(phi_ifra_bound(0.0, 2.0, 4.0, phi), validation_error);
}

TEST_CASE("power laws attain the exp-link bound with equality", "[phibound]") {
  const auto phi = phi_exp();
  for (double alpha : {0.8, 2.0}) {
    for (double v : {2.0, 5.0, 10.0}) {
      const double s_v = std::pow(v, -alpha);
      for (double u : geomspace(v * 1.1, 1000.0, 40)) {
        REQUIRE(phi_ifra_bound(s_v, v, u, phi) == Approx(std::pow(u, -alpha)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("exp-link bound dominates the exponential tail for anchors past e", "[phibound]") {
  // t/log t decreases until t = e, so the exponential law enters the class
  // only for anchors v >= e; from there the bound dominates up to u = 1000.
  const auto phi = phi_exp();
  for (double v : {2.75, 4.0, 10.0}) {
    const double s_v = std::exp(-v);
    for (double u : geomspace(v * 1.05, 1000.0, 60)) {
      REQUIRE(phi_ifra_bound(s_v, v, u, phi) >= std::exp(-u) - 1e-15);
    }
  }
}

TEST_CASE("weibull shape 2 bound sits between truth and one", "[phibound]") {
  const auto phi = phi_exp();
  const double s2 = std::exp(-4.0);  // S(2) for shape 2
  const double bound = phi_ifra_bound(s2, 2.0, 4.0, phi);
  REQUIRE(bound == Approx(std::exp(-8.0)).epsilon(1e-12));  // S(2)^2
  REQUIRE(bound >= std::exp(-16.0));                        // truth at u = 4
}

TEST_CASE("reciprocal link bounds the power law from above", "[phibound]") {
  const auto phi = phi_reciprocal();
  const double alpha = 1.0;
  for (double v : {2.0, 5.0}) {
    const double s_v = std::pow(v, -alpha);
    for (double u : geomspace(v * 1.1, 100.0, 30)) {
      REQUIRE(phi_ifra_bound(s_v, v, u, phi) >= std::pow(u, -alpha) - 1e-15);
    }
  }
}

TEST_CASE("reversed bound for the decreasing-rate weibull", "[phibound]") {
  // sqrt(t)/log t stays below its value near 1 on (1, 1000]: small anchors
  // certify the lower bound across the whole grid.
  const auto phi = phi_exp();
  for (double v : {1.05, 1.1, 1.2}) {
    const double s_v = std::exp(-std::sqrt(v));
    for (double u : geomspace(v * 1.05, 1000.0, 60)) {
      const double truth = std::exp(-std::sqrt(u));
      REQUIRE(truth >= dfra_bound(s_v, v, u, phi) - 1e-15);
    }
  }
  // pareto sits on the boundary: the lower bound is also exact
  REQUIRE(dfra_bound(std::pow(2.0, -1.5), 2.0, 8.0, phi) ==
          Approx(std::pow(8.0, -1.5)).epsilon(1e-12));
  // u -> v boundary again returns S(v)
  REQUIRE(dfra_bound(0.5, 1.5, 1.5 * (1.0 + 1e-12), phi) == Approx(0.5).margin(1e-9));
}

TEST_CASE("tail exponent certificates", "[phibound]") {
  const auto p = tail_exponent_bound(0.01, 10.0);
  REQUIRE(p.beta == Approx(2.0).epsilon(1e-12));
  REQUIRE_FALSE(p.degenerate);

  const double e = std::exp(1.0);
  const auto ee = tail_exponent_bound(std::exp(-e), e);
  REQUIRE(ee.beta == Approx(e).epsilon(1e-12));

  const auto flat = tail_exponent_bound(1.0 - 1e-12, 10.0);
  REQUIRE(flat.degenerate);
  REQUIRE(flat.beta == Approx(0.0).margin(1e-9));

  REQUIRE_THROWS_AS(tail_exponent_bound(1.0, 10.0), model_error);
  REQUIRE_THROWS_AS(tail_exponent_bound(0.0, 10.0), model_error);
  REQUIRE_THROWS_AS(tail_exponent_bound(0.5, 1.0), validation_error);
}
