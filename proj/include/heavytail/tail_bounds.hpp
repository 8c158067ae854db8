// Copyright (c) 2026 the heavytail authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heavytail/distributions.hpp"
#include "heavytail/errors.hpp"

namespace heavytail {

// ---------------------------------------------------------------------------
// Survival-curve machinery: cure decomposition, the increasing-failure-rate-
// in-average (IFRA) class with its exponential tail bound, and the
// phi-generalized hazard rate with the associated power-type bounds.
// ---------------------------------------------------------------------------

struct SurvivalCurve {
  std::vector<double> grid;    // strictly increasing, positive abscissae
  std::vector<double> values;  // S(t_i), nonincreasing, within [0,1]
  std::optional<double> cure;  // known asymptotic plateau, if any
};

inline SurvivalCurve make_survival_curve(std::vector<double> grid, std::vector<double> values,
                                         std::optional<double> cure = std::nullopt) {
  if (grid.size() != values.size()) throw validation_error("survival curve: grid/value size mismatch");
  if (grid.size() < 2) throw validation_error("survival curve: need at least 2 points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i]))
      throw validation_error("survival curve: grid must be positive and finite");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw validation_error("survival curve: grid must be strictly increasing");
    if (!(values[i] >= 0.0 && values[i] <= 1.0))
      throw validation_error("survival curve: values must lie in [0,1]");
    if (i > 0 && values[i] > values[i - 1] + 1e-12)
      throw validation_error("survival curve: values must be nonincreasing");
  }
  if (cure && !(*cure >= 0.0 && *cure < 1.0))
    throw validation_error("survival curve: cure mass must lie in [0,1)");
  return SurvivalCurve{std::move(grid), std::move(values), cure};
}

/// Tabulates the two-sided tail of a catalogue law on a grid.
inline SurvivalCurve tabulate_survival(const DistributionSpec& spec, std::vector<double> grid) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = survival(spec, grid[i]);
  return make_survival_curve(std::move(grid), std::move(values));
}

/// Removes a cure mass a: S_o(t) = (S(t) - a) / (1 - a), the survival of
/// failure times conditional on ultimate failure. Recomposing
/// a + (1-a) S_o reproduces the input.
inline SurvivalCurve cure_split(const SurvivalCurve& curve, double cure) {
  if (!(cure >= 0.0 && cure < 1.0)) throw validation_error("cure_split: cure mass must lie in [0,1)");
  SurvivalCurve out;
  out.grid = curve.grid;
  out.values.resize(curve.values.size());
  for (std::size_t i = 0; i < curve.values.size(); ++i) {
    if (curve.values[i] <= cure)
      throw validation_error("cure_split: cure mass must be strictly below every S(t) on the grid");
    out.values[i] = (curve.values[i] - cure) / (1.0 - cure);
  }
  return out;
}

// --- classical IFRA -------------------------------------------------------------

struct IfraCheck {
  bool is_ifra = false;       // -(1/t) log S(t) nondecreasing (tolerance 1e-9)
  bool truncated = false;     // grid cut at the first S(t) = 0
  std::size_t points_used = 0;

  explicit operator bool() const { return is_ifra; }
};

/// Membership test for the increasing-failure-rate-in-average class on a
/// tabulated curve. Non-strict: exponential laws sit exactly on the
/// boundary, so comparisons carry a 1e-9 tolerance.
inline IfraCheck ifra_check(const SurvivalCurve& curve, double tolerance = 1e-9) {
  IfraCheck result;
  std::vector<double> avg;
  avg.reserve(curve.grid.size());
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    if (curve.values[i] <= 0.0) {
      result.truncated = true;
      break;
    }
    avg.push_back(-std::log(curve.values[i]) / curve.grid[i]);
  }
  if (avg.size() < 2) throw model_error("ifra_check: fewer than 2 usable grid points");
  result.points_used = avg.size();
  result.is_ifra = true;
  for (std::size_t i = 0; i + 1 < avg.size(); ++i) {
    if (avg[i + 1] < avg[i] - tolerance * std::max(1.0, std::abs(avg[i]))) {
      result.is_ifra = false;
      break;
    }
  }
  return result;
}

inline IfraCheck ifra_check(const DistributionSpec& spec, std::vector<double> grid) {
  return ifra_check(tabulate_survival(spec, std::move(grid)));
}

/// IFRA exponential tail bound: knowing S(t) pins S(x) <= S(t)^(x/t) for
/// every x >= t. Exponential laws attain it with equality.
inline double ifra_tail_bound(double survival_at_t, double t, double x) {
  if (!(survival_at_t > 0.0 && survival_at_t < 1.0))
    throw validation_error("ifra_tail_bound: S(t) must lie strictly in (0,1)");
  if (!(t > 0.0)) throw validation_error("ifra_tail_bound: t must be > 0");
  if (!(x >= t)) throw validation_error("ifra_tail_bound: requires x >= t");
  return std::pow(survival_at_t, x / t);
}

// --- phi-generalized hazard ------------------------------------------------------

/// A decreasing link function phi on [0, inf) with phi(0) = 1 and
/// phi'(0) = -1, together with its inverse and derivative.
struct PhiFunction {
  std::function<double(double)> value;
  std::function<double(double)> inverse;
  std::function<double(double)> derivative;
  std::string name;
};

/// phi(u) = exp(-u); the classical choice, under which the generalized
/// machinery reduces to ordinary hazard rates on a log time scale.
inline PhiFunction phi_exp() {
  return PhiFunction{[](double u) { return std::exp(-u); },
                     [](double s) { return -std::log(s); },
                     [](double u) { return -std::exp(-u); }, "exp"};
}

/// phi(u) = 1/(1+u); an alternative link with the same normalization,
/// useful for exercising the machinery away from the exponential case.
inline PhiFunction phi_reciprocal() {
  return PhiFunction{[](double u) { return 1.0 / (1.0 + u); },
                     [](double s) { return 1.0 / s - 1.0; },
                     [](double u) { return -1.0 / ((1.0 + u) * (1.0 + u)); }, "reciprocal"};
}

/// Checks the normalization phi(0) = 1, phi'(0) = -1 (numerically, via a
/// Richardson one-sided difference), the inverse round-trip on (0,1], and
/// monotonicity. Throws on violation.
inline void validate_phi(const PhiFunction& phi) {
  if (!phi.value || !phi.inverse || !phi.derivative)
    throw validation_error("phi: value, inverse and derivative must all be set");
  if (std::abs(phi.value(0.0) - 1.0) > 1e-12) throw validation_error("phi: phi(0) must equal 1");
  const double h = 1e-4;
  const double d0 = (4.0 * phi.value(h) - phi.value(2.0 * h) - 3.0 * phi.value(0.0)) / (2.0 * h);
  if (std::abs(d0 + 1.0) > 1e-6) throw validation_error("phi: numeric phi'(0) must equal -1");
  double prev = std::numeric_limits<double>::infinity();
  for (double u : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    const double v = phi.value(u);
    if (!(v < prev)) throw validation_error("phi: must be strictly decreasing");
    prev = v;
  }
  for (double s = 1.0; s > 1e-8; s *= 0.5) {
    if (std::abs(phi.value(phi.inverse(s)) - s) > 1e-10 * std::max(1.0, std::abs(s)))
      throw validation_error("phi: inverse round-trip exceeds 1e-10");
  }
}

struct PhiHazardSample {
  double log_time = 0.0;  // t in r(t) = rho(e^t) e^t, i.e. log of the grid abscissa
  double rate = 0.0;
};

/// Generalized hazard rate r(t) = rho(e^t) e^t with
/// rho = d/dt phi^{-1}(S(t)), differenced centrally on the grid (one-sided
/// at the ends). Grid resolution is the caller's problem: no smoothing is
/// applied and coarse grids surface as error, not as quietly wrong output.
inline std::vector<PhiHazardSample> phi_hazard_rate(const SurvivalCurve& curve,
                                                    const PhiFunction& phi) {
  validate_phi(phi);
  std::vector<double> t, g;
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    if (curve.values[i] <= 0.0) break;  // phi^{-1} blows up at 0
    t.push_back(curve.grid[i]);
    g.push_back(phi.inverse(curve.values[i]));
  }
  if (t.size() < 3) throw model_error("phi_hazard_rate: grid too coarse for differencing");
  std::vector<PhiHazardSample> samples(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    double rho;
    if (i == 0)
      rho = (g[1] - g[0]) / (t[1] - t[0]);
    else if (i + 1 == t.size())
      rho = (g[i] - g[i - 1]) / (t[i] - t[i - 1]);
    else
      rho = (g[i + 1] - g[i - 1]) / (t[i + 1] - t[i - 1]);
    samples[i] = {std::log(t[i]), rho * t[i]};
  }
  return samples;
}

namespace detail {

inline void check_bound_args(double survival_at_v, double v, double u, const PhiFunction& phi) {
  if (!(survival_at_v > 0.0 && survival_at_v < 1.0))
    throw validation_error("tail bound: S(v) must lie strictly in (0,1)");
  if (!(u > v)) throw validation_error("tail bound: requires u > v");
  if (!(v > 0.0)) throw validation_error("tail bound: requires v > 0");
  if (phi.name == "exp" && !(v > 1.0))
    throw validation_error("tail bound: the exp link requires v > 1 (log scale)");
  if (std::log(u) / std::log(v) < 0.0)
    throw validation_error("tail bound: log u / log v must be nonnegative");
}

}  // namespace detail

/// Upper tail bound for phi-IFRA members:
/// S(u) <= phi((log u / log v) * phi^{-1}(S(v))). With the exp link this is
/// u^(log S(v)/log v), a power-type decay certificate; power laws attain it
/// with equality.
inline double phi_ifra_bound(double survival_at_v, double v, double u, const PhiFunction& phi) {
  detail::check_bound_args(survival_at_v, v, u, phi);
  return phi.value(std::log(u) / std::log(v) * phi.inverse(survival_at_v));
}

/// The same evaluation read as a *lower* bound, valid for phi-DFRA members
/// (decreasing generalized hazard rate).
inline double dfra_bound(double survival_at_v, double v, double u, const PhiFunction& phi) {
  return phi_ifra_bound(survival_at_v, v, u, phi);
}

struct TailExponent {
  double beta = 0.0;        // S(u) <= u^(-beta) certified for all u > v
  bool degenerate = false;  // S(v) ~ 1: no tail information at v
};

/// Decay-exponent certificate from a single survival value: with the exp
/// link, S(u) <= u^(log S(v)/log v) yields beta = -log S(v) / log v.
/// Plugging in an *empirical* S(v) makes this a heuristic certificate; no
/// confidence interval is attached.
inline TailExponent tail_exponent_bound(double survival_at_v, double v) {
  if (!(v > 1.0)) throw validation_error("tail_exponent_bound: requires v > 1");
  if (!(survival_at_v > 0.0 && survival_at_v < 1.0))
    throw model_error("tail_exponent_bound: S(v) in {0,1} carries no tail information");
  TailExponent result;
  result.beta = -std::log(survival_at_v) / std::log(v);
  result.degenerate = survival_at_v > 1.0 - 1e-9;
  return result;
}

}  // namespace heavytail
