// Copyright (c) 2026 the heavytail authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "heavytail/errors.hpp"
#include "heavytail/statistics.hpp"

namespace heavytail {

struct FitReport {
  std::size_t n_total = 0;     // dataset size
  std::size_t n_used = 0;      // values >= x_min entering the fit
  double x_min = 0.0;
  double gamma_hat = 0.0;      // mean of log(x / x_min)
  double tail_exponent = 0.0;  // 1 / gamma_hat
  double ks_distance = 0.0;    // empirical vs fitted model
  std::vector<double> sorted_used;  // admissible values, ascending
};

/// Fits S(x) = (x/x_min)^(-1/gamma) by the log-mean estimator. Values below
/// x_min are excluded (the model has no support there), not clamped.
inline FitReport fit_pareto(std::span<const double> data,
                            std::optional<double> x_min = std::nullopt) {
  if (data.empty()) throw validation_error("fit_pareto: empty dataset");
  for (double v : data)
    if (!(v > 0.0)) throw validation_error("fit_pareto: all values must be positive");
  if (x_min && !(*x_min > 0.0)) throw validation_error("fit_pareto: x_min must be positive");

  FitReport report;
  report.n_total = data.size();
  report.x_min = x_min ? *x_min : *std::min_element(data.begin(), data.end());

  for (double v : data)
    if (v >= report.x_min) report.sorted_used.push_back(v);
  std::sort(report.sorted_used.begin(), report.sorted_used.end());
  report.n_used = report.sorted_used.size();
  if (report.n_used < 10)
    throw validation_error("fit_pareto: fewer than 10 values at or above x_min");

  double acc = 0.0;
  for (double v : report.sorted_used) acc += std::log(v / report.x_min);
  report.gamma_hat = acc / static_cast<double>(report.n_used);
  if (report.gamma_hat <= 0.0)
    throw model_error("fit_pareto: degenerate data, no spread above x_min");
  report.tail_exponent = 1.0 / report.gamma_hat;

  const double xm = report.x_min, beta = report.tail_exponent;
  report.ks_distance = ks_statistic(report.sorted_used, [xm, beta](double x) {
    return x <= xm ? 0.0 : 1.0 - std::pow(x / xm, -beta);
  });
  return report;
}

}  // namespace heavytail
