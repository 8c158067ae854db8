// Copyright (c) 2026 the heavytail authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "heavytail/distributions.hpp"
#include "heavytail/errors.hpp"
#include "heavytail/statistics.hpp"

namespace heavytail {

// ---------------------------------------------------------------------------
// Order-statistic gap diagnostics and the outlier-rate statistic.
// ---------------------------------------------------------------------------

enum class GapTransform { identity, log_scale, arctan };

inline const char* to_string(GapTransform t) {
  switch (t) {
    case GapTransform::identity: return "identity";
    case GapTransform::log_scale: return "log";
    case GapTransform::arctan: return "arctan";
  }
  return "?";
}

struct GapProfile {
  GapTransform transform = GapTransform::identity;
  std::vector<double> sorted_abs;  // |x| in nondecreasing order
  std::vector<double> gaps;        // n-1 consecutive differences after transform
};

/// Gaps between consecutive transformed order statistics of |x|. The log
/// transform requires strictly positive magnitudes and reports the original
/// index of the first offender.
inline GapProfile order_gaps(std::span<const double> values, GapTransform transform) {
  if (values.size() < 2) throw validation_error("order_gaps: need at least 2 values");
  if (transform == GapTransform::log_scale) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (std::abs(values[i]) <= 0.0) {
        std::ostringstream os;
        os << "order_gaps: log transform requires all |values| > 0; value at index " << i
           << " is " << values[i];
        throw validation_error(os.str());
      }
    }
  }
  GapProfile profile;
  profile.transform = transform;
  profile.sorted_abs.reserve(values.size());
  for (double v : values) profile.sorted_abs.push_back(std::abs(v));
  std::sort(profile.sorted_abs.begin(), profile.sorted_abs.end());

  auto apply = [transform](double v) {
    switch (transform) {
      case GapTransform::identity: return v;
      case GapTransform::log_scale: return std::log(v);
      case GapTransform::arctan: return std::atan(v);
    }
    return v;
  };
  profile.gaps.resize(profile.sorted_abs.size() - 1);
  for (std::size_t i = 0; i + 1 < profile.sorted_abs.size(); ++i)
    profile.gaps[i] = apply(profile.sorted_abs[i + 1]) - apply(profile.sorted_abs[i]);
  return profile;
}

inline GapProfile order_gaps(const SampleBatch& batch, GapTransform transform) {
  return order_gaps(std::span<const double>(batch.values), transform);
}

/// Largest gap relative to the typical (mean) gap. The mean gap telescopes
/// to (transform(max) - transform(min))/(n-1), which is the scale a reader
/// of a gap plot normalizes by.
inline double gap_ratio(const GapProfile& profile) {
  if (profile.gaps.size() < 3) throw validation_error("gap_ratio: need at least 3 gaps");
  double total = 0.0, largest = 0.0;
  for (double g : profile.gaps) {
    total += g;
    largest = std::max(largest, g);
  }
  const double typical = total / static_cast<double>(profile.gaps.size());
  if (typical <= 0.0) throw model_error("gap_ratio: degenerate profile, all gaps are zero");
  return largest / typical;
}

struct OutlierReport {
  double k = 0.0;
  double mean = 0.0;
  double sd = 0.0;    // 1/n divisor
  double rate = 0.0;  // fraction with |x - mean|/sd > k
  std::vector<std::size_t> flagged;
  bool degenerate = false;  // sd == 0; rate reported as 0
};

/// Fraction of observations farther than k sample standard deviations from
/// the sample mean. The variance uses the 1/n divisor. A zero-variance
/// sample yields rate 0 with the degenerate flag set.
inline OutlierReport outlier_rate(std::span<const double> values, double k) {
  if (values.size() < 2) throw validation_error("outlier_rate: need at least 2 values");
  if (!(k > 0.0)) throw validation_error("outlier_rate: k must be > 0");
  OutlierReport report;
  report.k = k;
  report.mean = mean_of(values);
  report.sd = std::sqrt(variance_of(values));
  if (report.sd == 0.0) {
    report.degenerate = true;
    return report;
  }
  for (std::size_t i = 0; i < values.size(); ++i)
    if (std::abs(values[i] - report.mean) / report.sd > k) report.flagged.push_back(i);
  report.rate = static_cast<double>(report.flagged.size()) / static_cast<double>(values.size());
  return report;
}

inline OutlierReport outlier_rate(const SampleBatch& batch, double k) {
  return outlier_rate(std::span<const double>(batch.values), k);
}

// ---------------------------------------------------------------------------
// Outlier-rate decay experiment for stable samples.
// ---------------------------------------------------------------------------

struct RateSweepRow {
  std::size_t n = 0;
  double mean_rate = 0.0;
  double sd_rate = 0.0;  // sample sd across trials
};

namespace detail {

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::future<void>> futures;
  futures.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    }));
  }
  for (auto& f : futures) f.get();
}

}  // namespace detail

/// Mean and spread of the outlier rate across seeded trials for each sample
/// size. Trials run on derived sub-streams and are merged in index order, so
/// the table is deterministic in (spec, n_grid, k, trials, seed) regardless
/// of scheduling.
inline std::vector<RateSweepRow> outlier_rate_sweep(const DistributionSpec& spec,
                                                    std::span<const std::size_t> n_grid, double k,
                                                    std::size_t trials, std::uint64_t seed) {
  if (n_grid.empty()) throw validation_error("outlier_rate_sweep: empty n grid");
  for (std::size_t i = 0; i + 1 < n_grid.size(); ++i)
    if (n_grid[i] >= n_grid[i + 1])
      throw validation_error("outlier_rate_sweep: n grid must be strictly increasing");
  if (trials < 1) throw validation_error("outlier_rate_sweep: trials must be >= 1");
  validate(spec);

  std::vector<RateSweepRow> rows;
  rows.reserve(n_grid.size());
  for (std::size_t row = 0; row < n_grid.size(); ++row) {
    const std::size_t n = n_grid[row];
    std::vector<double> rates(trials);
    detail::parallel_for(trials, [&](std::size_t t) {
      const std::uint64_t stream = derive_stream(seed, row * trials + t);
      SampleBatch batch = sample(spec, n, stream);
      rates[t] = outlier_rate(batch, k).rate;
    });
    rows.push_back({n, mean_of(rates), sample_sd(rates)});
  }
  return rows;
}

/// Decay of the outlier rate for heavy-tailed stable samples: alpha < 2
/// drives the rate to zero as n grows, while alpha = 2 (the normal case)
/// serves as the flat light-tailed contrast.
inline std::vector<RateSweepRow> stable_outlier_decay(double alpha,
                                                      std::span<const std::size_t> n_grid,
                                                      double k, std::size_t trials,
                                                      std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha <= 2.0))
    throw validation_error("stable_outlier_decay: alpha must be in (0,2]");
  if (trials < 30) throw validation_error("stable_outlier_decay: trials must be >= 30");
  return outlier_rate_sweep(StrictlyStable{alpha}, n_grid, k, trials, seed);
}

}  // namespace heavytail
