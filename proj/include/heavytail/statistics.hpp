// Copyright (c) 2026 the heavytail authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "heavytail/errors.hpp"

namespace heavytail {

inline double mean_of(std::span<const double> values) {
  if (values.empty()) throw validation_error("mean_of: empty sample");
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

/// Population variance (1/n divisor).
inline double variance_of(std::span<const double> values) {
  const double m = mean_of(values);
  double s = 0.0;
  for (double v : values) s += (v - m) * (v - m);
  return s / static_cast<double>(values.size());
}

/// Sample standard deviation (1/(n-1) divisor); used for across-trial spread.
inline double sample_sd(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double m = mean_of(values);
  double s = 0.0;
  for (double v : values) s += (v - m) * (v - m);
  return std::sqrt(s / static_cast<double>(values.size() - 1));
}

inline double median_of(std::vector<double> values) {
  if (values.empty()) throw validation_error("median_of: empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

inline double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Upper tail of the standard normal, accurate deep into the tail.
inline double standard_normal_sf(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

/// One-sample Kolmogorov-Smirnov statistic against a model CDF.
inline double ks_statistic(std::span<const double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw validation_error("ks_statistic: empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  return d;
}

/// Two-sample Kolmogorov-Smirnov statistic; ties are processed jointly so
/// identical samples yield exactly 0.
inline double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw validation_error("ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double na = static_cast<double>(x.size()), nb = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

/// Two-sample KS critical value at significance `alpha` (classical
/// asymptotic formula c(alpha)*sqrt((n+m)/(n*m)); c(0.01) ~= 1.628).
inline double ks_two_sample_critical(std::size_t n, std::size_t m, double alpha = 0.01) {
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  return c * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * static_cast<double>(m)));
}

struct TailSlopeFit {
  double slope = 0.0;      // d log S / d log x
  double intercept = 0.0;  // log S at log x = 0
  std::size_t points = 0;
};

/// Least-squares fit of log empirical survival against log x, restricted to
/// order statistics whose plotting position S_i = 1 - i/(n+1) lies in
/// [s_lo, s_hi]. A "decade" window such as [1e-3, 1e-2] probes the extreme
/// tail without starving the regression of points.
inline TailSlopeFit loglog_tail_slope(std::vector<double> values, double s_lo, double s_hi) {
  if (values.size() < 10) throw validation_error("loglog_tail_slope: need at least 10 values");
  if (!(s_lo > 0.0 && s_lo < s_hi && s_hi < 1.0))
    throw validation_error("loglog_tail_slope: survival window must satisfy 0 < lo < hi < 1");
  std::sort(values.begin(), values.end());
  const double n1 = static_cast<double>(values.size()) + 1.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double s = 1.0 - static_cast<double>(i + 1) / n1;
    if (s < s_lo || s > s_hi || values[i] <= 0.0) continue;
    const double lx = std::log(values[i]), ly = std::log(s);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++k;
  }
  if (k < 5) throw model_error("loglog_tail_slope: fewer than 5 points in the survival window");
  const double kk = static_cast<double>(k);
  const double denom = kk * sxx - sx * sx;
  if (denom == 0.0) throw model_error("loglog_tail_slope: degenerate abscissae");
  TailSlopeFit fit;
  fit.slope = (kk * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / kk;
  fit.points = k;
  return fit;
}

}  // namespace heavytail
