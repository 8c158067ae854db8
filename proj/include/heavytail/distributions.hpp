// Copyright (c) 2026 the heavytail authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "heavytail/errors.hpp"
#include "heavytail/rng.hpp"
#include "heavytail/stable.hpp"
#include "heavytail/statistics.hpp"

namespace heavytail {

// ---------------------------------------------------------------------------
// Distribution catalogue. Each variant is a small parameter struct; free
// functions dispatch over the closed family. Throughout, "survival" means the
// two-sided tail T(x) = P(|X| > x) for x >= 0.
// ---------------------------------------------------------------------------

struct Degenerate {
  double value = 0.0;
};

struct Exponential {
  double rate = 1.0;  // positive support, survival exp(-rate*x)
};

struct Laplace {
  double rate = 1.0;  // symmetric, two-sided tail exp(-rate*x)
};

struct Normal {
  double sigma = 1.0;  // mean 0
};

struct ParetoI {
  double alpha = 1.0;  // support x >= 1, survival x^(-alpha)
};

/// ParetoI magnitude with an independent random sign; the symmetric
/// power-tail base used by the put-tail-down construction.
struct SymmetricPareto {
  double alpha = 1.0;
};

struct Uniform {
  double lo = 0.0;
  double hi = 1.0;
};

struct StrictlyStable {
  double alpha = 2.0;  // symmetric, index in (0, 2]
};

struct DistributionSpecBox;

/// Mixture (1-p) * base + p * atom-at-zero; with half_width > 0 the atom is
/// smoothed into a uniform on [-half_width, half_width]. Built through
/// make_put_tail_down(), which enforces a symmetric base with finite
/// variance.
struct PutTailDownMix {
  std::shared_ptr<const DistributionSpecBox> base;
  double p = 0.5;
  double half_width = 0.0;
};

/// Discrete uniform over a fixed data set (kept sorted); sampling draws an
/// index, survival is the empirical step function.
struct Empirical {
  std::vector<double> values;
};

using DistributionSpec =
    std::variant<Degenerate, Exponential, Laplace, Normal, ParetoI, SymmetricPareto, Uniform,
                 StrictlyStable, PutTailDownMix, Empirical>;

struct DistributionSpecBox {
  DistributionSpec spec;
};

struct SampleBatch {
  std::vector<double> values;
  DistributionSpec spec;
  std::uint64_t seed = 0;

  std::size_t size() const { return values.size(); }
};

namespace detail {

inline void check(bool ok, const char* msg) {
  if (!ok) throw validation_error(msg);
}

}  // namespace detail

inline Empirical make_empirical(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return Empirical{std::move(values)};
}

// --- structural queries -------------------------------------------------------

inline bool is_symmetric(const DistributionSpec& spec) {
  return std::visit(
      [](const auto& d) -> bool {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Degenerate>) {
          return d.value == 0.0;
        } else if constexpr (std::is_same_v<T, Laplace> || std::is_same_v<T, Normal> ||
                             std::is_same_v<T, SymmetricPareto> ||
                             std::is_same_v<T, StrictlyStable>) {
          return true;
        } else if constexpr (std::is_same_v<T, Uniform>) {
          return d.lo == -d.hi;
        } else if constexpr (std::is_same_v<T, PutTailDownMix>) {
          return is_symmetric(d.base->spec);
        } else if constexpr (std::is_same_v<T, Empirical>) {
          const auto& v = d.values;
          for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != -v[v.size() - 1 - i]) return false;
          return true;
        } else {
          return false;
        }
      },
      spec);
}

inline std::optional<double> mean(const DistributionSpec& spec) {
  return std::visit(
      [](const auto& d) -> std::optional<double> {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Degenerate>) {
          return d.value;
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return 1.0 / d.rate;
        } else if constexpr (std::is_same_v<T, Laplace> || std::is_same_v<T, Normal>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, ParetoI>) {
          if (d.alpha <= 1.0) return std::nullopt;
          return d.alpha / (d.alpha - 1.0);
        } else if constexpr (std::is_same_v<T, SymmetricPareto>) {
          if (d.alpha <= 1.0) return std::nullopt;
          return 0.0;
        } else if constexpr (std::is_same_v<T, Uniform>) {
          return 0.5 * (d.lo + d.hi);
        } else if constexpr (std::is_same_v<T, StrictlyStable>) {
          if (d.alpha <= 1.0) return std::nullopt;
          return 0.0;
        } else if constexpr (std::is_same_v<T, PutTailDownMix>) {
          auto mb = mean(d.base->spec);
          if (!mb) return std::nullopt;
          return (1.0 - d.p) * *mb;
        } else {
          double s = 0.0;
          for (double v : d.values) s += v;
          return s / static_cast<double>(d.values.size());
        }
      },
      spec);
}

/// Variance when finite; nullopt when infinite or undefined.
inline std::optional<double> variance(const DistributionSpec& spec) {
  return std::visit(
      [](const auto& d) -> std::optional<double> {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Degenerate>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return 1.0 / (d.rate * d.rate);
        } else if constexpr (std::is_same_v<T, Laplace>) {
          return 2.0 / (d.rate * d.rate);
        } else if constexpr (std::is_same_v<T, Normal>) {
          return d.sigma * d.sigma;
        } else if constexpr (std::is_same_v<T, ParetoI>) {
          if (d.alpha <= 2.0) return std::nullopt;
          const double a = d.alpha;
          return a / ((a - 1.0) * (a - 1.0) * (a - 2.0));
        } else if constexpr (std::is_same_v<T, SymmetricPareto>) {
          if (d.alpha <= 2.0) return std::nullopt;
          return d.alpha / (d.alpha - 2.0);
        } else if constexpr (std::is_same_v<T, Uniform>) {
          const double w = d.hi - d.lo;
          return w * w / 12.0;
        } else if constexpr (std::is_same_v<T, StrictlyStable>) {
          if (d.alpha < 2.0) return std::nullopt;
          return 2.0;
        } else if constexpr (std::is_same_v<T, PutTailDownMix>) {
          auto vb = variance(d.base->spec);
          if (!vb) return std::nullopt;
          return (1.0 - d.p) * *vb + d.p * d.half_width * d.half_width / 3.0;
        } else {
          std::vector<double> copy(d.values.begin(), d.values.end());
          return variance_of(copy);
        }
      },
      spec);
}

// --- validation --------------------------------------------------------------

inline void validate(const DistributionSpec& spec) {
  std::visit(
      [](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Degenerate>) {
          detail::check(std::isfinite(d.value), "Degenerate: value must be finite");
        } else if constexpr (std::is_same_v<T, Exponential>) {
          detail::check(d.rate > 0.0 && std::isfinite(d.rate), "Exponential: rate must be > 0");
        } else if constexpr (std::is_same_v<T, Laplace>) {
          detail::check(d.rate > 0.0 && std::isfinite(d.rate), "Laplace: rate must be > 0");
        } else if constexpr (std::is_same_v<T, Normal>) {
          detail::check(d.sigma > 0.0 && std::isfinite(d.sigma), "Normal: sigma must be > 0");
        } else if constexpr (std::is_same_v<T, ParetoI>) {
          detail::check(d.alpha > 0.0 && std::isfinite(d.alpha), "ParetoI: alpha must be > 0");
        } else if constexpr (std::is_same_v<T, SymmetricPareto>) {
          detail::check(d.alpha > 0.0 && std::isfinite(d.alpha), "SymmetricPareto: alpha must be > 0");
        } else if constexpr (std::is_same_v<T, Uniform>) {
          detail::check(d.lo < d.hi && std::isfinite(d.lo) && std::isfinite(d.hi),
                        "Uniform: requires lo < hi");
        } else if constexpr (std::is_same_v<T, StrictlyStable>) {
          detail::check(d.alpha > 0.0 && d.alpha <= 2.0, "StrictlyStable: alpha must be in (0,2]");
        } else if constexpr (std::is_same_v<T, PutTailDownMix>) {
          detail::check(d.base != nullptr, "PutTailDownMix: missing base");
          detail::check(d.p > 0.0 && d.p < 1.0, "PutTailDownMix: p must be in (0,1)");
          detail::check(d.half_width >= 0.0, "PutTailDownMix: half_width must be >= 0");
          validate(d.base->spec);
          detail::check(is_symmetric(d.base->spec), "PutTailDownMix: base must be symmetric");
          detail::check(variance(d.base->spec).has_value(),
                        "PutTailDownMix: base must have finite variance");
        } else if constexpr (std::is_same_v<T, Empirical>) {
          detail::check(!d.values.empty(), "Empirical: needs at least one value");
          detail::check(std::is_sorted(d.values.begin(), d.values.end()),
                        "Empirical: values must be sorted");
        }
      },
      spec);
}

inline std::string describe(const DistributionSpec& spec) {
  return std::visit(
      [](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        std::ostringstream os;
        if constexpr (std::is_same_v<T, Degenerate>) {
          os << "degenerate(" << d.value << ")";
        } else if constexpr (std::is_same_v<T, Exponential>) {
          os << "exponential(" << d.rate << ")";
        } else if constexpr (std::is_same_v<T, Laplace>) {
          os << "laplace(" << d.rate << ")";
        } else if constexpr (std::is_same_v<T, Normal>) {
          os << "normal(" << d.sigma << ")";
        } else if constexpr (std::is_same_v<T, ParetoI>) {
          os << "pareto(" << d.alpha << ")";
        } else if constexpr (std::is_same_v<T, SymmetricPareto>) {
          os << "sympareto(" << d.alpha << ")";
        } else if constexpr (std::is_same_v<T, Uniform>) {
          os << "uniform(" << d.lo << "," << d.hi << ")";
        } else if constexpr (std::is_same_v<T, StrictlyStable>) {
          os << "stable(" << d.alpha << ")";
        } else if constexpr (std::is_same_v<T, PutTailDownMix>) {
          os << "ptd(" << describe(d.base->spec) << "," << d.p;
          if (d.half_width > 0.0) os << "," << d.half_width;
          os << ")";
        } else {
          os << "empirical(n=" << d.values.size() << ")";
        }
        return os.str();
      },
      spec);
}

// --- sampling ----------------------------------------------------------------

namespace detail {

inline double draw_one(CounterRng& rng, const DistributionSpec& spec) {
  return std::visit(
      [&rng](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Degenerate>) {
          return d.value;
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return -std::log(rng.uniform_open()) / d.rate;
        } else if constexpr (std::is_same_v<T, Laplace>) {
          // Inverse CDF; exactly antisymmetric in u <-> 1-u.
          const double u = rng.uniform_open();
          return u < 0.5 ? std::log(2.0 * u) / d.rate : -std::log(2.0 * (1.0 - u)) / d.rate;
        } else if constexpr (std::is_same_v<T, Normal>) {
          const double r = std::sqrt(-2.0 * std::log(rng.uniform_open()));
          return d.sigma * r * std::cos(2.0 * std::numbers::pi * rng.uniform());
        } else if constexpr (std::is_same_v<T, ParetoI>) {
          return std::pow(rng.uniform_open(), -1.0 / d.alpha);
        } else if constexpr (std::is_same_v<T, SymmetricPareto>) {
          const double mag = std::pow(rng.uniform_open(), -1.0 / d.alpha);
          return (rng() & 1ull) ? mag : -mag;
        } else if constexpr (std::is_same_v<T, Uniform>) {
          return d.lo + (d.hi - d.lo) * rng.uniform();
        } else if constexpr (std::is_same_v<T, StrictlyStable>) {
          return stable::draw(rng, d.alpha);
        } else if constexpr (std::is_same_v<T, PutTailDownMix>) {
          if (rng.uniform() < d.p) {
            if (d.half_width == 0.0) return 0.0;
            return d.half_width * (2.0 * rng.uniform_open() - 1.0);
          }
          return draw_one(rng, d.base->spec);
        } else {
          const std::size_t i = std::min<std::size_t>(
              static_cast<std::size_t>(rng.uniform() * static_cast<double>(d.values.size())),
              d.values.size() - 1);
          return d.values[i];
        }
      },
      spec);
}

}  // namespace detail

/// n i.i.d. draws, bit-for-bit reproducible in (spec, n, seed).
inline SampleBatch sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw validation_error("sample: n must be >= 1");
  validate(spec);
  SampleBatch batch;
  batch.spec = spec;
  batch.seed = seed;
  batch.values.resize(n);
  CounterRng rng = make_rng(seed);
  for (std::size_t i = 0; i < n; ++i) batch.values[i] = detail::draw_one(rng, spec);
  return batch;
}

// --- survival ----------------------------------------------------------------

/// True when survival() evaluates a closed form rather than a numeric
/// approximation. StrictlyStable with alpha < 2 is the approximate case.
inline bool survival_is_analytic(const DistributionSpec& spec) {
  return std::visit(
      [](const auto& d) -> bool {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, StrictlyStable>) {
          return d.alpha == 2.0;
        } else if constexpr (std::is_same_v<T, PutTailDownMix>) {
          return survival_is_analytic(d.base->spec);
        } else {
          return true;
        }
      },
      spec);
}

/// Two-sided tail T(x) = P(|X| > x), defined for x >= 0; nonincreasing and
/// right-continuous in x.
inline double survival(const DistributionSpec& spec, double x) {
  if (x < 0.0) throw validation_error("survival: x must be >= 0");
  validate(spec);
  return std::visit(
      [x](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Degenerate>) {
          return std::abs(d.value) > x ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return std::exp(-d.rate * x);
        } else if constexpr (std::is_same_v<T, Laplace>) {
          return std::exp(-d.rate * x);
        } else if constexpr (std::is_same_v<T, Normal>) {
          return std::erfc(x / (d.sigma * std::sqrt(2.0)));
        } else if constexpr (std::is_same_v<T, ParetoI> || std::is_same_v<T, SymmetricPareto>) {
          return x < 1.0 ? 1.0 : std::pow(x, -d.alpha);
        } else if constexpr (std::is_same_v<T, Uniform>) {
          auto cdf = [&d](double t) {
            if (t <= d.lo) return 0.0;
            if (t >= d.hi) return 1.0;
            return (t - d.lo) / (d.hi - d.lo);
          };
          return (1.0 - cdf(x)) + cdf(-x);
        } else if constexpr (std::is_same_v<T, StrictlyStable>) {
          return stable::survival(d.alpha, x);
        } else if constexpr (std::is_same_v<T, PutTailDownMix>) {
          const double base_tail = survival(d.base->spec, x);
          double atom_tail = 0.0;
          if (d.half_width > 0.0 && x < d.half_width) atom_tail = 1.0 - x / d.half_width;
          return (1.0 - d.p) * base_tail + d.p * atom_tail;
        } else {
          std::size_t count = 0;
          for (double v : d.values)
            if (std::abs(v) > x) ++count;
          return static_cast<double>(count) / static_cast<double>(d.values.size());
        }
      },
      spec);
}

/// One-sided upper tail P(X > x) for x >= 0. For symmetric continuous
/// variants this is T(x)/2; positive-support variants coincide with T(x).
inline double upper_tail(const DistributionSpec& spec, double x) {
  if (x < 0.0) throw validation_error("upper_tail: x must be >= 0");
  if (std::holds_alternative<Exponential>(spec) || std::holds_alternative<ParetoI>(spec))
    return survival(spec, x);
  if (const auto* u = std::get_if<Uniform>(&spec)) {
    if (x >= u->hi) return 0.0;
    if (x <= u->lo) return 1.0;
    return (u->hi - x) / (u->hi - u->lo);
  }
  if (const auto* d = std::get_if<Degenerate>(&spec)) return d->value > x ? 1.0 : 0.0;
  if (const auto* e = std::get_if<Empirical>(&spec)) {
    std::size_t count = 0;
    for (double v : e->values)
      if (v > x) ++count;
    return static_cast<double>(count) / static_cast<double>(e->values.size());
  }
  if (!is_symmetric(spec)) throw model_error("upper_tail: unsupported non-symmetric spec");
  return 0.5 * survival(spec, x);
}

// --- power-tail parameters -----------------------------------------------------

struct PowerTail {
  double alpha = 0.0;
  double scale = 0.0;        // lambda in T(x) ~ scale * x^(-alpha)
  bool approximate = false;  // true when scale comes from a numeric oracle
};

/// Power-tail parameters (alpha, lambda) when lim T(x) x^alpha = lambda > 0
/// exists; nullopt when the tail beats every power (exponential-type laws)
/// or carries no tail at all.
inline std::optional<PowerTail> power_tail_parameters(const DistributionSpec& spec) {
  validate(spec);
  return std::visit(
      [](const auto& d) -> std::optional<PowerTail> {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ParetoI> || std::is_same_v<T, SymmetricPareto>) {
          return PowerTail{d.alpha, 1.0, false};
        } else if constexpr (std::is_same_v<T, StrictlyStable>) {
          if (d.alpha >= 2.0) return std::nullopt;  // Gaussian: lighter than any power
          return PowerTail{d.alpha, stable::tail_scale(d.alpha), true};
        } else if constexpr (std::is_same_v<T, PutTailDownMix>) {
          auto base = power_tail_parameters(d.base->spec);
          if (!base) return std::nullopt;
          return PowerTail{base->alpha, (1.0 - d.p) * base->scale, base->approximate};
        } else {
          return std::nullopt;  // degenerate, bounded or exponential-type tails
        }
      },
      spec);
}

// --- distributional self-check -------------------------------------------------

/// Two-sample KS statistic between a batch of `spec` draws and the rotation
/// (A + B)/sqrt(2) of two independent batches. Under a centered normal the
/// two laws agree (the classical rotation characterization); any other law
/// separates as n grows.
inline double polya_rotation_statistic(const DistributionSpec& spec, std::size_t n,
                                       std::uint64_t seed) {
  if (n < 100) throw validation_error("polya_rotation_statistic: n must be >= 100");
  SampleBatch direct = sample(spec, n, derive_stream(seed, 0));
  SampleBatch a = sample(spec, n, derive_stream(seed, 1));
  SampleBatch b = sample(spec, n, derive_stream(seed, 2));
  std::vector<double> rotated(n);
  for (std::size_t i = 0; i < n; ++i)
    rotated[i] = (a.values[i] + b.values[i]) / std::sqrt(2.0);
  return ks_two_sample(direct.values, rotated);
}

/// Rotation self-check for the unit normal.
inline double polya_selfcheck(std::size_t n, std::uint64_t seed) {
  return polya_rotation_statistic(Normal{1.0}, n, seed);
}

}  // namespace heavytail
