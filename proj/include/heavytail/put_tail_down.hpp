// Copyright (c) 2026 the heavytail authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <memory>

#include "heavytail/diagnostics.hpp"
#include "heavytail/distributions.hpp"
#include "heavytail/errors.hpp"

namespace heavytail {

// ---------------------------------------------------------------------------
// The put-tail-down construction: mix a symmetric finite-variance base with
// an atom at the origin. The tail shrinks by the factor (1-p) but the
// variance shrinks by the same factor, so thresholds measured in standard
// deviations can flag *more* observations than under the base law.
// ---------------------------------------------------------------------------

struct PutTailDownSpec {
  DistributionSpec base;
  double p = 0.5;           // mass moved to the origin
  double half_width = 0.0;  // 0 keeps the atom; > 0 smooths it into U[-w, w]
  double base_sigma2 = 0.0;
};

/// Validates and packages the construction. The base must be symmetric with
/// finite variance.
inline PutTailDownSpec make_put_tail_down(DistributionSpec base, double p,
                                          double half_width = 0.0) {
  validate(base);
  if (!(p > 0.0 && p < 1.0)) throw validation_error("put_tail_down: p must be in (0,1)");
  if (!(half_width >= 0.0)) throw validation_error("put_tail_down: half_width must be >= 0");
  if (!is_symmetric(base)) throw validation_error("put_tail_down: base must be symmetric");
  auto var = variance(base);
  if (!var) throw validation_error("put_tail_down: base must have finite variance");
  return PutTailDownSpec{std::move(base), p, half_width, *var};
}

/// The mixture as a sampleable catalogue entry.
inline DistributionSpec as_distribution(const PutTailDownSpec& spec) {
  return PutTailDownMix{std::make_shared<DistributionSpecBox>(DistributionSpecBox{spec.base}),
                        spec.p, spec.half_width};
}

/// Mixture variance: (1-p) * base variance, plus the small smoothing term
/// when the atom is widened.
inline double mixture_variance(const PutTailDownSpec& spec) {
  return (1.0 - spec.p) * spec.base_sigma2 +
         spec.p * spec.half_width * spec.half_width / 3.0;
}

inline SampleBatch sample_ptd(const PutTailDownSpec& spec, std::size_t n, std::uint64_t seed) {
  return sample(as_distribution(spec), n, seed);
}

/// Exact P(|Y| > k * sigma_p) for the unsmoothed mixture, where sigma_p is
/// the mixture's own standard deviation: evaluates
/// 2 (1-p) * P(X > k * sqrt(1-p) * sigma) against the base upper tail.
inline double outlier_prob_exact(const PutTailDownSpec& spec, double k) {
  if (!(k > 0.0)) throw validation_error("outlier_prob_exact: k must be > 0");
  if (spec.half_width != 0.0)
    throw model_error("outlier_prob_exact: smoothed mixtures have no closed form; use Monte Carlo");
  if (!survival_is_analytic(spec.base))
    throw model_error("outlier_prob_exact: base lacks an analytic survival function");
  const double sigma_p = std::sqrt((1.0 - spec.p) * spec.base_sigma2);
  return 2.0 * (1.0 - spec.p) * upper_tail(spec.base, k * sigma_p);
}

struct TailComparison {
  bool holds = false;  // mixture produces more outliers at this k
  double lhs = 0.0;    // (1-p) * P(X > k sqrt(1-p) sigma)
  double rhs = 0.0;    // P(X > k sigma)
};

/// Sufficiency check for the mixture to out-flag the base at threshold k:
/// (1-p) * F_bar(k sqrt(1-p) sigma) > F_bar(k sigma). For power-tail bases
/// with alpha > 2 the ratio lhs/rhs tends to (1-p)^(1-alpha/2) > 1.
inline TailComparison check_condition_4a(const PutTailDownSpec& spec, double k) {
  if (!(k > 0.0)) throw validation_error("check_condition_4a: k must be > 0");
  if (!survival_is_analytic(spec.base))
    throw model_error("check_condition_4a: base lacks an analytic survival function");
  const double sigma = std::sqrt(spec.base_sigma2);
  TailComparison cmp;
  cmp.lhs = (1.0 - spec.p) * upper_tail(spec.base, k * std::sqrt(1.0 - spec.p) * sigma);
  cmp.rhs = upper_tail(spec.base, k * sigma);
  cmp.holds = cmp.lhs > cmp.rhs;
  return cmp;
}

struct OutlierRateComparison {
  double rate_base = 0.0;  // mean empirical outlier rate of the base
  double rate_ptd = 0.0;   // mean empirical outlier rate of the mixture
  std::size_t ptd_wins = 0;  // trials where the mixture rate was strictly higher
  std::size_t trials = 0;
};

/// Monte Carlo confirmation: empirical outlier rates (thresholds in sample
/// standard deviations, mirroring the diagnostic) for base and mixture over
/// paired seeded trials.
inline OutlierRateComparison more_outliers_mc(const PutTailDownSpec& spec, double k,
                                              std::size_t n, std::size_t trials,
                                              std::uint64_t seed) {
  if (trials < 1) throw validation_error("more_outliers_mc: trials must be >= 1");
  const DistributionSpec mixture = as_distribution(spec);
  OutlierRateComparison result;
  result.trials = trials;
  std::vector<double> base_rates(trials), ptd_rates(trials);
  detail::parallel_for(trials, [&](std::size_t t) {
    SampleBatch base_batch = sample(spec.base, n, derive_stream(seed, 2 * t));
    SampleBatch ptd_batch = sample(mixture, n, derive_stream(seed, 2 * t + 1));
    base_rates[t] = outlier_rate(base_batch, k).rate;
    ptd_rates[t] = outlier_rate(ptd_batch, k).rate;
  });
  for (std::size_t t = 0; t < trials; ++t) {
    result.rate_base += base_rates[t];
    result.rate_ptd += ptd_rates[t];
    if (ptd_rates[t] > base_rates[t]) ++result.ptd_wins;
  }
  result.rate_base /= static_cast<double>(trials);
  result.rate_ptd /= static_cast<double>(trials);
  return result;
}

}  // namespace heavytail
