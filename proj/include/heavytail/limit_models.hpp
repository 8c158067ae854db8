// Copyright (c) 2026 the heavytail authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "heavytail/distributions.hpp"
#include "heavytail/errors.hpp"
#include "heavytail/rng.hpp"

namespace heavytail {

// ---------------------------------------------------------------------------
// Generative models that reach heavy-tailed limits from light-tailed (even
// bounded) ingredients: the LePage series, geometric random products, and
// geometric random minima.
// ---------------------------------------------------------------------------

struct LePageSpec {
  double depression = 2.0;      // exponent a > 1/2; implied tail index 1/a
  DistributionSpec signal;      // law of the Y_k
  std::optional<std::size_t> truncation;  // series length; derived from tolerance if unset
  double tolerance = 1e-4;      // remainder bound target when truncation is unset
};

/// Series length N so that the analytic remainder bound is below the
/// tolerance. For a > 1 the remainder of sum Y_k / G_k^a is bounded via
/// G_k >= k/2 (overwhelming probability), giving 2^a * sum_{k>N} k^(-a);
/// for a in (1/2, 1] the variance bound sum_{k>N} k^(-2a) Var(Y) applies and
/// needs a finite-variance signal.
inline std::size_t lepage_truncation(const LePageSpec& spec) {
  const double a = spec.depression;
  if (!(a > 0.5)) throw validation_error("lepage: depression exponent must be > 1/2");
  if (spec.truncation) {
    if (*spec.truncation < 1) throw validation_error("lepage: truncation must be >= 1");
    return *spec.truncation;
  }
  const double tol = spec.tolerance;
  if (!(tol > 0.0)) throw validation_error("lepage: tolerance must be > 0");
  double n = 0.0;
  if (a > 1.0) {
    // 2^a * N^(1-a)/(a-1) <= tol
    n = std::pow(std::pow(2.0, a) / ((a - 1.0) * tol), 1.0 / (a - 1.0));
  } else {
    auto var = variance(spec.signal);
    if (!var) throw validation_error("lepage: a <= 1 requires a finite-variance signal");
    // Var(Y) * N^(1-2a)/(2a-1) <= tol
    n = std::pow(std::max(*var, 1e-300) / ((2.0 * a - 1.0) * tol), 1.0 / (2.0 * a - 1.0));
  }
  return static_cast<std::size_t>(std::max(1.0, std::ceil(n)));
}

/// Remainder bound actually achieved by a series length N (same bound the
/// truncation rule inverts).
inline double lepage_remainder_bound(const LePageSpec& spec, std::size_t n_terms) {
  const double a = spec.depression;
  const double nn = static_cast<double>(n_terms);
  if (a > 1.0) return std::pow(2.0, a) * std::pow(nn, 1.0 - a) / (a - 1.0);
  auto var = variance(spec.signal);
  if (!var) throw validation_error("lepage: a <= 1 requires a finite-variance signal");
  return *var * std::pow(nn, 1.0 - 2.0 * a) / (2.0 * a - 1.0);
}

/// Draws of the truncated series sum_{k<=N} Y_k / G_k^a, with G_k the
/// arrival times of a unit Poisson process. The limit as N grows is
/// symmetric strictly stable with index 1/a.
inline SampleBatch lepage_sample(const LePageSpec& spec, std::size_t n, std::uint64_t seed) {
  const double a = spec.depression;
  if (!(a > 0.5)) throw validation_error("lepage: depression exponent must be > 1/2 (index 1/a would leave (0,2))");
  validate(spec.signal);
  if (a <= 1.0) {
    auto m = mean(spec.signal);
    if (!is_symmetric(spec.signal) && !(m && *m == 0.0))
      throw validation_error("lepage: a <= 1 diverges unless the signal is symmetric or mean-zero");
  }
  const std::size_t terms = lepage_truncation(spec);

  SampleBatch batch;
  batch.spec = spec.signal;
  batch.seed = seed;
  batch.values.resize(n);
  CounterRng rng = make_rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    double arrival = 0.0;
    double sum = 0.0;
    for (std::size_t k = 0; k < terms; ++k) {
      arrival += -std::log(rng.uniform_open());
      sum += detail::draw_one(rng, spec.signal) / std::pow(arrival, a);
    }
    batch.values[i] = sum;
  }
  return batch;
}

// --- tail-index estimation -----------------------------------------------------

/// Standard bias/variance compromise for the Hill tail fraction.
inline std::size_t default_hill_m(std::size_t n) {
  return static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), 2.0 / 3.0)));
}

/// Hill estimator on the top m absolute order statistics:
/// m / sum_i log(|X|_(n-i+1) / |X|_(n-m)).
inline double hill_estimator(std::span<const double> values, std::size_t m) {
  const std::size_t n = values.size();
  if (m < 2 || m >= n) throw validation_error("hill_estimator: need 2 <= m < n");
  std::vector<double> mags(n);
  for (std::size_t i = 0; i < n; ++i) mags[i] = std::abs(values[i]);
  std::sort(mags.begin(), mags.end());
  const double cutoff = mags[n - m - 1];
  if (!(cutoff > 0.0))
    throw validation_error("hill_estimator: top m+1 order statistics must be positive");
  double acc = 0.0;
  for (std::size_t i = n - m; i < n; ++i) acc += std::log(mags[i] / cutoff);
  if (acc == 0.0) throw model_error("hill_estimator: degenerate ties in the tail");
  return static_cast<double>(m) / acc;
}

inline double hill_estimator(const SampleBatch& batch, std::size_t m) {
  return hill_estimator(std::span<const double>(batch.values), m);
}

// --- geometric random products ---------------------------------------------------

struct CapitalSpec {
  DistributionSpec factor;  // law of the positive factors X_j
  double p = 0.01;          // unfavorable-event rate; E[count] = 1/p
};

struct GeometricProductBatch {
  SampleBatch batch;               // draws of (prod X_j)^p, computed in log space
  std::vector<std::uint32_t> nu;   // geometric factor counts, support {1, 2, ...}
};

namespace detail {

inline std::uint32_t geometric_count(CounterRng& rng, double p) {
  if (p >= 1.0) return 1;
  const double u = rng.uniform_open();
  const double k = std::floor(std::log(u) / std::log1p(-p));
  return 1u + static_cast<std::uint32_t>(std::min(k, 4.0e9));
}

}  // namespace detail

/// Draws of Z = (X_1 * ... * X_nu)^p with nu geometric on {1, 2, ...}. The
/// product is evaluated as exp(p * sum log X_j); with ~1/p factors a direct
/// product overflows double precision long before the log-sum does. As p
/// decreases the law of Z approaches a unit-scale power tail with index
/// 1 / E[log X].
inline GeometricProductBatch capital_sample(const CapitalSpec& spec, std::size_t n,
                                            std::uint64_t seed) {
  if (!(spec.p > 0.0 && spec.p <= 1.0)) throw validation_error("capital_sample: p must be in (0,1]");
  validate(spec.factor);
  GeometricProductBatch result;
  result.batch.spec = spec.factor;
  result.batch.seed = seed;
  result.batch.values.resize(n);
  result.nu.resize(n);
  CounterRng rng = make_rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t count = detail::geometric_count(rng, spec.p);
    double log_sum = 0.0;
    double single = 0.0;
    for (std::uint32_t j = 0; j < count; ++j) {
      const double x = detail::draw_one(rng, spec.factor);
      if (!(x > 0.0)) throw model_error("capital_sample: factor law produced a nonpositive value");
      log_sum += std::log(x);
      single = x;
    }
    result.nu[i] = count;
    // a single factor avoids the exp/log round trip: pow(x, 1) == x
    result.batch.values[i] =
        count == 1 ? std::pow(single, spec.p) : std::exp(spec.p * log_sum);
  }
  return result;
}

/// Estimator of E[log X]: the mean of the log observations.
inline double gamma_hat(std::span<const double> values) {
  if (values.empty()) throw validation_error("gamma_hat: empty sample");
  double acc = 0.0;
  for (double v : values) {
    if (!(v > 0.0)) throw validation_error("gamma_hat: all values must be positive");
    acc += std::log(v);
  }
  return acc / static_cast<double>(values.size());
}

inline double gamma_hat(const SampleBatch& batch) {
  return gamma_hat(std::span<const double>(batch.values));
}

// --- geometric random minima -------------------------------------------------------

struct RandomMinBatch {
  SampleBatch minima;              // min(X_1, ..., X_nu)
  std::vector<double> scaled;      // minima / p, the limit-scale companion
  std::vector<std::uint32_t> nu;
};

/// Draws of the minimum of a geometric number of factors, plus the
/// companion min/p whose law converges (p -> 0) to survival 1/(1+s) for
/// uniform(0,1) factors. Like the product model, a bounded factor law still
/// yields a heavy-tailed limit (for 1/min).
inline RandomMinBatch random_min_sample(const CapitalSpec& spec, std::size_t n,
                                        std::uint64_t seed) {
  if (!(spec.p > 0.0 && spec.p <= 1.0)) throw validation_error("random_min_sample: p must be in (0,1]");
  validate(spec.factor);
  RandomMinBatch result;
  result.minima.spec = spec.factor;
  result.minima.seed = seed;
  result.minima.values.resize(n);
  result.scaled.resize(n);
  result.nu.resize(n);
  CounterRng rng = make_rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t count = detail::geometric_count(rng, spec.p);
    double smallest = std::numeric_limits<double>::infinity();
    for (std::uint32_t j = 0; j < count; ++j)
      smallest = std::min(smallest, detail::draw_one(rng, spec.factor));
    result.nu[i] = count;
    result.minima.values[i] = smallest;
    result.scaled[i] = smallest / spec.p;
  }
  return result;
}

}  // namespace heavytail
