// Copyright (c) 2026 the heavytail authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "heavytail/csv.hpp"
#include "heavytail/diagnostics.hpp"
#include "heavytail/distributions.hpp"
#include "heavytail/errors.hpp"
#include "heavytail/fit.hpp"
#include "heavytail/limit_models.hpp"
#include "heavytail/put_tail_down.hpp"
#include "heavytail/serde.hpp"
#include "heavytail/svg.hpp"
#include "heavytail/tail_bounds.hpp"

namespace heavytail::cli {

using nlohmann::json;

/// One experiment run: subcommand, its parameters, seed, output location and
/// format. Persisting this object and re-running it reproduces every output
/// file byte for byte (no timestamps are ever written).
struct ExperimentConfig {
  std::string subcommand;
  json params = json::object();
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::string format = "csv";  // "csv" or "svg" (svg adds plots next to the csv)
};

namespace detail {

inline double require_double(const json& p, const char* key, const std::string& sub) {
  if (!p.contains(key) || !p[key].is_number())
    throw validation_error("config: subcommand '" + sub + "' requires numeric parameter '" + key + "'");
  return p[key].get<double>();
}

inline bool is_count(const json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

inline std::uint64_t require_count(const json& p, const char* key, const std::string& sub) {
  if (!p.contains(key) || !is_count(p[key]))
    throw validation_error("config: subcommand '" + sub + "' requires a nonnegative integer '" + key + "'");
  return p[key].get<std::uint64_t>();
}

inline std::string require_string(const json& p, const char* key, const std::string& sub) {
  if (!p.contains(key) || !p[key].is_string())
    throw validation_error("config: subcommand '" + sub + "' requires string parameter '" + key + "'");
  return p[key].get<std::string>();
}

inline double optional_double(const json& p, const char* key, double fallback) {
  if (!p.contains(key)) return fallback;
  if (!p[key].is_number()) throw validation_error(std::string("config: '") + key + "' must be numeric");
  return p[key].get<double>();
}

inline std::uint64_t optional_count(const json& p, const char* key, std::uint64_t fallback) {
  if (!p.contains(key)) return fallback;
  if (!is_count(p[key]))
    throw validation_error(std::string("config: '") + key + "' must be a nonnegative integer");
  return p[key].get<std::uint64_t>();
}

inline std::string optional_string(const json& p, const char* key, const std::string& fallback) {
  if (!p.contains(key)) return fallback;
  if (!p[key].is_string()) throw validation_error(std::string("config: '") + key + "' must be a string");
  return p[key].get<std::string>();
}

inline std::vector<std::size_t> require_count_array(const json& p, const char* key,
                                                    const std::string& sub) {
  if (!p.contains(key) || !p[key].is_array() || p[key].empty())
    throw validation_error("config: subcommand '" + sub + "' requires integer array '" + key + "'");
  std::vector<std::size_t> out;
  for (const auto& v : p[key]) {
    if (!is_count(v)) throw validation_error(std::string("config: '") + key + "' must hold nonnegative integers");
    out.push_back(v.get<std::size_t>());
  }
  return out;
}

inline GapTransform parse_transform(const std::string& name) {
  if (name == "identity") return GapTransform::identity;
  if (name == "log") return GapTransform::log_scale;
  if (name == "arctan") return GapTransform::arctan;
  throw validation_error("config: unknown transform '" + name + "' (identity|log|arctan)");
}

inline PhiFunction parse_phi(const std::string& name) {
  if (name == "exp") return phi_exp();
  if (name == "reciprocal") return phi_reciprocal();
  throw validation_error("config: unknown phi '" + name + "' (exp|reciprocal)");
}

inline std::string out_path(const ExperimentConfig& cfg, const std::string& file) {
  return (std::filesystem::path(cfg.out_dir) / file).string();
}

inline bool want_svg(const ExperimentConfig& cfg) {
  if (cfg.format == "csv") return false;
  if (cfg.format == "svg") return true;
  throw validation_error("config: format must be 'csv' or 'svg'");
}

/// Plotting-position survival points (1 - i/(n+1)); never 0, so the points
/// survive a log axis. Subsampled to at most `max_rows` evenly spaced rows.
inline std::vector<std::pair<double, double>> survival_points(std::vector<double> sorted,
                                                              std::size_t max_rows = 512) {
  const std::size_t n = sorted.size();
  std::vector<std::pair<double, double>> pts;
  const std::size_t stride = std::max<std::size_t>(1, n / max_rows);
  for (std::size_t i = 0; i < n; i += stride)
    pts.emplace_back(sorted[i], 1.0 - static_cast<double>(i + 1) / (static_cast<double>(n) + 1.0));
  return pts;
}

}  // namespace detail

// --- subcommand runners ------------------------------------------------------

inline std::string run_simulate(const ExperimentConfig& cfg) {
  const auto spec = parse_distribution(detail::require_string(cfg.params, "dist", cfg.subcommand));
  const std::size_t n = detail::require_count(cfg.params, "n", cfg.subcommand);
  SampleBatch batch = sample(spec, n, cfg.seed);

  CsvWriter csv({"index", "value"});
  for (std::size_t i = 0; i < batch.size(); ++i) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", batch.values[i]);
    csv.add_row({std::to_string(i), buf});
  }
  csv.write_file(detail::out_path(cfg, "samples.csv"));
  if (detail::want_svg(cfg)) {
    std::vector<double> idx(batch.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<double>(i);
    SvgPlot plot("samples: " + describe(spec), "index", "value");
    plot.add_series(idx, batch.values, "steelblue", false);
    plot.write_file(detail::out_path(cfg, "samples.svg"));
  }
  return "simulate " + describe(spec) + " n=" + std::to_string(n) +
         " mean=" + csv_num(mean_of(batch.values)) +
         " sd=" + csv_num(std::sqrt(variance_of(batch.values)));
}

inline std::string run_gaps(const ExperimentConfig& cfg) {
  const auto spec = parse_distribution(detail::require_string(cfg.params, "dist", cfg.subcommand));
  const std::size_t n = detail::require_count(cfg.params, "n", cfg.subcommand);
  const auto transform =
      detail::parse_transform(detail::optional_string(cfg.params, "transform", "identity"));
  SampleBatch batch = sample(spec, n, cfg.seed);
  GapProfile profile = order_gaps(batch, transform);
  const double ratio = gap_ratio(profile);

  CsvWriter csv({"index", "gap"});
  for (std::size_t i = 0; i < profile.gaps.size(); ++i)
    csv.add_row({std::to_string(i), csv_num(profile.gaps[i])});
  csv.write_file(detail::out_path(cfg, "gaps.csv"));
  if (detail::want_svg(cfg)) {
    std::vector<double> idx(profile.gaps.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<double>(i);
    SvgPlot plot("gaps between ordered |x|: " + describe(spec) + ", " + to_string(transform),
                 "order statistic index", "gap");
    plot.add_series(idx, profile.gaps, "steelblue", false);
    plot.write_file(detail::out_path(cfg, "gaps.svg"));
  }
  return "gaps " + describe(spec) + " n=" + std::to_string(n) + " transform=" +
         to_string(transform) + " gap_ratio=" + csv_num(ratio);
}

inline std::string run_outlier_rate(const ExperimentConfig& cfg) {
  const auto spec = parse_distribution(detail::require_string(cfg.params, "dist", cfg.subcommand));
  const std::size_t n = detail::require_count(cfg.params, "n", cfg.subcommand);
  const double k = detail::require_double(cfg.params, "k", cfg.subcommand);
  SampleBatch batch = sample(spec, n, cfg.seed);
  OutlierReport report = outlier_rate(batch, k);

  CsvWriter csv({"n", "k", "mean", "sd", "rate", "flagged_count", "degenerate"});
  csv.add_row({std::to_string(n), csv_num(k), csv_num(report.mean), csv_num(report.sd),
               csv_num(report.rate), std::to_string(report.flagged.size()),
               report.degenerate ? "1" : "0"});
  csv.write_file(detail::out_path(cfg, "outlier_report.csv"));

  CsvWriter flagged({"index", "value"});
  for (std::size_t i : report.flagged) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", batch.values[i]);
    flagged.add_row({std::to_string(i), buf});
  }
  flagged.write_file(detail::out_path(cfg, "flagged.csv"));
  return "outlier-rate " + describe(spec) + " n=" + std::to_string(n) + " k=" + csv_num(k) +
         " rate=" + csv_num(report.rate) + (report.degenerate ? " (degenerate)" : "");
}

inline std::string run_rate_sweep(const ExperimentConfig& cfg) {
  const double alpha = detail::require_double(cfg.params, "alpha", cfg.subcommand);
  const double k = detail::require_double(cfg.params, "k", cfg.subcommand);
  const std::size_t trials = detail::require_count(cfg.params, "trials", cfg.subcommand);
  const auto n_grid = detail::require_count_array(cfg.params, "n_grid", cfg.subcommand);
  const auto rows = stable_outlier_decay(alpha, n_grid, k, trials, cfg.seed);

  CsvWriter csv({"n", "mean_rate", "sd_rate", "trials", "alpha", "k", "seed"});
  for (const auto& row : rows)
    csv.add_row({std::to_string(row.n), csv_num(row.mean_rate), csv_num(row.sd_rate),
                 std::to_string(trials), csv_num(alpha), csv_num(k), std::to_string(cfg.seed)});
  csv.write_file(detail::out_path(cfg, "rate_sweep.csv"));
  if (detail::want_svg(cfg)) {
    std::vector<double> xs, ys;
    for (const auto& row : rows) {
      xs.push_back(static_cast<double>(row.n));
      ys.push_back(row.mean_rate);
    }
    SvgPlot plot("outlier rate vs n (stable alpha=" + csv_num(alpha) + ", k=" + csv_num(k) + ")",
                 "n", "mean rate", true);
    plot.add_series(xs, ys, "firebrick", true);
    plot.write_file(detail::out_path(cfg, "rate_sweep.svg"));
  }
  return "theorem1 alpha=" + csv_num(alpha) + " k=" + csv_num(k) + " first=" +
         csv_num(rows.front().mean_rate) + " last=" + csv_num(rows.back().mean_rate);
}

inline std::string run_put_tail_down(const ExperimentConfig& cfg) {
  const auto base = parse_distribution(detail::require_string(cfg.params, "base", cfg.subcommand));
  const double p = detail::require_double(cfg.params, "p", cfg.subcommand);
  const double k = detail::require_double(cfg.params, "k", cfg.subcommand);
  const double eps = detail::optional_double(cfg.params, "eps", 0.0);
  const std::size_t mc_trials = detail::optional_count(cfg.params, "mc_trials", 0);
  const std::size_t mc_n = detail::optional_count(cfg.params, "mc_n", 100000);
  PutTailDownSpec spec = make_put_tail_down(base, p, eps);

  const double sigma = std::sqrt(spec.base_sigma2);
  const double sigma_p = std::sqrt(mixture_variance(spec));
  std::string prob_ptd_cell, prob_base_cell, lhs_cell, rhs_cell, holds_cell;
  std::string verdict = "n/a";
  if (eps == 0.0 && survival_is_analytic(base)) {
    const double prob_ptd = outlier_prob_exact(spec, k);
    const double prob_base = survival(base, k * sigma);
    const TailComparison cmp = check_condition_4a(spec, k);
    prob_ptd_cell = csv_num(prob_ptd);
    prob_base_cell = csv_num(prob_base);
    lhs_cell = csv_num(cmp.lhs);
    rhs_cell = csv_num(cmp.rhs);
    holds_cell = cmp.holds ? "1" : "0";
    verdict = cmp.holds ? "more_outliers" : "not_more_outliers";
  }

  CsvWriter csv({"p", "k", "eps", "sigma_base", "sigma_p", "prob_exact_ptd", "prob_exact_base",
                 "lhs_4a", "rhs_4a", "holds_4a"});
  csv.add_row({csv_num(p), csv_num(k), csv_num(eps), csv_num(sigma), csv_num(sigma_p),
               prob_ptd_cell, prob_base_cell, lhs_cell, rhs_cell, holds_cell});
  csv.write_file(detail::out_path(cfg, "put_tail_down.csv"));

  if (mc_trials > 0) {
    const auto mc = more_outliers_mc(spec, k, mc_n, mc_trials, cfg.seed);
    CsvWriter mc_csv({"n", "trials", "rate_base", "rate_ptd", "ptd_wins"});
    mc_csv.add_row({std::to_string(mc_n), std::to_string(mc.trials), csv_num(mc.rate_base),
                    csv_num(mc.rate_ptd), std::to_string(mc.ptd_wins)});
    mc_csv.write_file(detail::out_path(cfg, "ptd_mc.csv"));
  }
  return "put-tail-down base=" + describe(base) + " p=" + csv_num(p) + " k=" + csv_num(k) +
         " verdict=" + verdict;
}

inline std::string run_lepage(const ExperimentConfig& cfg) {
  LePageSpec spec;
  spec.depression = detail::require_double(cfg.params, "a", cfg.subcommand);
  spec.signal = parse_distribution(detail::optional_string(cfg.params, "signal", "degenerate(1)"));
  if (cfg.params.contains("terms")) spec.truncation = detail::require_count(cfg.params, "terms", cfg.subcommand);
  spec.tolerance = detail::optional_double(cfg.params, "tolerance", 1e-4);
  const std::size_t n = detail::require_count(cfg.params, "n", cfg.subcommand);

  const std::size_t terms = lepage_truncation(spec);
  SampleBatch batch = lepage_sample(spec, n, cfg.seed);
  CsvWriter csv({"index", "value"});
  for (std::size_t i = 0; i < batch.size(); ++i) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", batch.values[i]);
    csv.add_row({std::to_string(i), buf});
  }
  csv.write_file(detail::out_path(cfg, "samples.csv"));

  std::vector<double> mags(batch.values.size());
  for (std::size_t i = 0; i < mags.size(); ++i) mags[i] = std::abs(batch.values[i]);
  const double hill = hill_estimator(mags, default_hill_m(mags.size()));
  if (detail::want_svg(cfg)) {
    std::sort(mags.begin(), mags.end());
    auto pts = detail::survival_points(mags);
    std::vector<double> xs, ys;
    for (auto& [x, s] : pts) {
      xs.push_back(x);
      ys.push_back(s);
    }
    SvgPlot plot("empirical survival of |X|, series a=" + csv_num(spec.depression), "|x|",
                 "S(|x|)", true, true);
    plot.add_series(xs, ys, "steelblue", false);
    plot.write_file(detail::out_path(cfg, "survival.svg"));
  }
  return "lepage a=" + csv_num(spec.depression) + " terms=" + std::to_string(terms) +
         " n=" + std::to_string(n) + " hill_alpha=" + csv_num(hill);
}

inline std::string run_capital(const ExperimentConfig& cfg) {
  CapitalSpec spec;
  spec.factor = parse_distribution(detail::require_string(cfg.params, "factor", cfg.subcommand));
  spec.p = detail::require_double(cfg.params, "p", cfg.subcommand);
  const std::size_t n = detail::require_count(cfg.params, "n", cfg.subcommand);

  GeometricProductBatch result = capital_sample(spec, n, cfg.seed);
  CsvWriter csv({"index", "value"});
  for (std::size_t i = 0; i < result.batch.size(); ++i) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", result.batch.values[i]);
    csv.add_row({std::to_string(i), buf});
  }
  csv.write_file(detail::out_path(cfg, "samples.csv"));

  const double gamma = gamma_hat(result.batch);
  std::vector<double> sorted = result.batch.values;
  std::sort(sorted.begin(), sorted.end());
  const double beta = 1.0 / gamma;
  CsvWriter surv({"x", "S_empirical", "S_model"});
  std::vector<double> xs, ye, ym;
  for (auto& [x, s] : detail::survival_points(sorted)) {
    const double model = x < 1.0 ? 1.0 : std::pow(x, -beta);
    surv.add_row({csv_num(x), csv_num(s), csv_num(model)});
    xs.push_back(x);
    ye.push_back(s);
    ym.push_back(model);
  }
  surv.write_file(detail::out_path(cfg, "survival.csv"));
  if (detail::want_svg(cfg)) {
    SvgPlot plot("geometric product vs power-law limit (p=" + csv_num(spec.p) + ")", "x", "S(x)",
                 true, true);
    plot.add_series(xs, ye, "steelblue", false);
    plot.add_series(xs, ym, "firebrick", true);
    plot.write_file(detail::out_path(cfg, "survival.svg"));
  }
  const double hill = hill_estimator(result.batch, default_hill_m(n));
  return "capital factor=" + describe(spec.factor) + " p=" + csv_num(spec.p) +
         " gamma_hat=" + csv_num(gamma) + " hill_alpha=" + csv_num(hill);
}

inline std::string run_random_min(const ExperimentConfig& cfg) {
  CapitalSpec spec;
  spec.factor = parse_distribution(detail::require_string(cfg.params, "factor", cfg.subcommand));
  spec.p = detail::require_double(cfg.params, "p", cfg.subcommand);
  const std::size_t n = detail::require_count(cfg.params, "n", cfg.subcommand);

  RandomMinBatch result = random_min_sample(spec, n, cfg.seed);
  CsvWriter csv({"index", "value"});
  for (std::size_t i = 0; i < result.minima.size(); ++i) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", result.minima.values[i]);
    csv.add_row({std::to_string(i), buf});
  }
  csv.write_file(detail::out_path(cfg, "samples.csv"));

  // Survival of min/p against the exact geometric-minimum law
  // p*Fbar(ps) / (1 - (1-p)*Fbar(ps)); for uniform(0,1) factors this is
  // within O(p) of the limit 1/(1+s).
  std::vector<double> sorted = result.scaled;
  std::sort(sorted.begin(), sorted.end());
  auto model = [&spec](double s) {
    const double fbar = upper_tail(spec.factor, spec.p * s);
    return spec.p * fbar / (1.0 - (1.0 - spec.p) * fbar);
  };
  CsvWriter surv({"x", "S_empirical", "S_model"});
  std::vector<double> xs, ye, ym;
  for (auto& [x, s] : detail::survival_points(sorted)) {
    surv.add_row({csv_num(x), csv_num(s), csv_num(model(x))});
    xs.push_back(x);
    ye.push_back(s);
    ym.push_back(model(x));
  }
  surv.write_file(detail::out_path(cfg, "survival.csv"));
  if (detail::want_svg(cfg)) {
    SvgPlot plot("scaled geometric minimum (p=" + csv_num(spec.p) + ")", "min/p", "S", true, true);
    plot.add_series(xs, ye, "steelblue", false);
    plot.add_series(xs, ym, "firebrick", true);
    plot.write_file(detail::out_path(cfg, "survival.svg"));
  }
  return "random-min factor=" + describe(spec.factor) + " p=" + csv_num(spec.p) +
         " n=" + std::to_string(n);
}

inline std::string run_tail_bound(const ExperimentConfig& cfg) {
  const std::string input = detail::require_string(cfg.params, "input", cfg.subcommand);
  const double v = detail::require_double(cfg.params, "v", cfg.subcommand);
  const double u_max = detail::optional_double(cfg.params, "u_max", 1000.0);
  const std::size_t points = detail::optional_count(cfg.params, "points", 64);
  const PhiFunction phi = detail::parse_phi(detail::optional_string(cfg.params, "phi", "exp"));

  auto [t, s] = ingest_survival_csv(input);
  SurvivalCurve curve = make_survival_curve(std::move(t), std::move(s));
  auto interpolate = [&curve](double x) -> std::optional<double> {
    if (x < curve.grid.front() || x > curve.grid.back()) return std::nullopt;
    auto it = std::lower_bound(curve.grid.begin(), curve.grid.end(), x);
    const std::size_t hi = static_cast<std::size_t>(it - curve.grid.begin());
    if (hi == 0) return curve.values.front();
    const std::size_t lo = hi - 1;
    const double w = (x - curve.grid[lo]) / (curve.grid[hi] - curve.grid[lo]);
    return curve.values[lo] + w * (curve.values[hi] - curve.values[lo]);
  };
  const auto s_v = interpolate(v);
  if (!s_v) throw validation_error("tail-bound: v lies outside the curve's grid");
  if (!(u_max > v)) throw validation_error("tail-bound: u_max must exceed v");

  const TailExponent exponent = tail_exponent_bound(*s_v, v);
  const IfraCheck ifra = ifra_check(curve);

  CsvWriter csv({"u", "bound", "truth_if_known"});
  std::vector<double> xs, yb, yt, xt;
  const double ratio = std::pow(u_max / v, 1.0 / static_cast<double>(points));
  double u = v;
  for (std::size_t i = 0; i < points; ++i) {
    u *= ratio;
    const double bound = phi_ifra_bound(*s_v, v, std::min(u, u_max), phi);
    const auto truth = interpolate(u);
    csv.add_row({csv_num(u), csv_num(bound), truth ? csv_num(*truth) : ""});
    xs.push_back(u);
    yb.push_back(bound);
    if (truth) {
      xt.push_back(u);
      yt.push_back(*truth);
    }
  }
  csv.write_file(detail::out_path(cfg, "bounds.csv"));
  if (detail::want_svg(cfg)) {
    SvgPlot plot("tail bound from S(v), phi=" + phi.name, "u", "S", true, true);
    plot.add_series(xs, yb, "firebrick", true);
    plot.add_series(xt, yt, "steelblue", false);
    plot.write_file(detail::out_path(cfg, "bounds.svg"));
  }
  return "tail-bound v=" + csv_num(v) + " S(v)=" + csv_num(*s_v) + " beta=" +
         csv_num(exponent.beta) + (exponent.degenerate ? " (degenerate)" : "") +
         " ifra=" + (ifra.is_ifra ? "yes" : "no");
}

inline std::string run_fit_pareto(const ExperimentConfig& cfg) {
  const std::string input = detail::require_string(cfg.params, "input", cfg.subcommand);
  std::optional<std::string> column;
  if (cfg.params.contains("column")) column = detail::require_string(cfg.params, "column", cfg.subcommand);
  std::optional<double> x_min;
  if (cfg.params.contains("x_min")) x_min = detail::require_double(cfg.params, "x_min", cfg.subcommand);

  const std::vector<double> data = ingest_csv(input, column);
  const FitReport report = fit_pareto(data, x_min);

  CsvWriter rep({"n", "n_used", "x_min", "gamma_hat", "tail_exponent", "ks_distance"});
  rep.add_row({std::to_string(report.n_total), std::to_string(report.n_used),
               csv_num(report.x_min), csv_num(report.gamma_hat), csv_num(report.tail_exponent),
               csv_num(report.ks_distance)});
  rep.write_file(detail::out_path(cfg, "fit_report.csv"));

  const auto pts = detail::survival_points(report.sorted_used);
  CsvWriter lin({"x", "S_empirical", "S_model"});
  CsvWriter loglog({"log_x", "log_S_empirical", "log_S_model"});
  std::vector<double> xs, ye, ym;
  for (auto& [x, s] : pts) {
    const double model = std::pow(x / report.x_min, -report.tail_exponent);
    lin.add_row({csv_num(x), csv_num(s), csv_num(model)});
    loglog.add_row({csv_num(std::log(x)), csv_num(std::log(s)), csv_num(std::log(model))});
    xs.push_back(x);
    ye.push_back(s);
    ym.push_back(model);
  }
  lin.write_file(detail::out_path(cfg, "survival_linear.csv"));
  loglog.write_file(detail::out_path(cfg, "survival_loglog.csv"));
  if (detail::want_svg(cfg)) {
    SvgPlot linear_plot("fitted power-law survival", "x", "S(x)");
    linear_plot.add_series(xs, ye, "steelblue", false);
    linear_plot.add_series(xs, ym, "firebrick", true);
    linear_plot.write_file(detail::out_path(cfg, "fit_linear.svg"));
    SvgPlot log_plot("fitted power-law survival (log-log)", "x", "S(x)", true, true);
    log_plot.add_series(xs, ye, "steelblue", false);
    log_plot.add_series(xs, ym, "firebrick", true);
    log_plot.write_file(detail::out_path(cfg, "fit_loglog.svg"));
  }
  return "fit-pareto n=" + std::to_string(report.n_total) + " x_min=" + csv_num(report.x_min) +
         " gamma_hat=" + csv_num(report.gamma_hat) + " tail_exponent=" +
         csv_num(report.tail_exponent) + " ks=" + csv_num(report.ks_distance);
}

/// Validates and executes one configured run. Returns the process exit code:
/// 0 on success, 1 on validation failure, 2 on runtime/model failure. The
/// one-line summary goes to stdout; errors go to stderr. Output files are
/// only written after the computation succeeds.
inline int run_config(const ExperimentConfig& cfg, std::ostream& out = std::cout,
                      std::ostream& err = std::cerr) {
  try {
    std::string summary;
    if (!cfg.out_dir.empty()) std::filesystem::create_directories(cfg.out_dir);
    if (cfg.subcommand == "simulate") summary = run_simulate(cfg);
    else if (cfg.subcommand == "gaps") summary = run_gaps(cfg);
    else if (cfg.subcommand == "outlier-rate") summary = run_outlier_rate(cfg);
    else if (cfg.subcommand == "theorem1") summary = run_rate_sweep(cfg);
    else if (cfg.subcommand == "put-tail-down") summary = run_put_tail_down(cfg);
    else if (cfg.subcommand == "lepage") summary = run_lepage(cfg);
    else if (cfg.subcommand == "capital") summary = run_capital(cfg);
    else if (cfg.subcommand == "random-min") summary = run_random_min(cfg);
    else if (cfg.subcommand == "tail-bound") summary = run_tail_bound(cfg);
    else if (cfg.subcommand == "fit-pareto") summary = run_fit_pareto(cfg);
    else throw validation_error("unknown subcommand '" + cfg.subcommand + "'");
    out << summary << "\n";
    return 0;
  } catch (const validation_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

/// Loads a config file, checks its subcommand tag against the invoked one,
/// and merges: command-line overrides win over config values.
inline ExperimentConfig merge_config(const std::string& subcommand,
                                     const std::optional<std::string>& config_path,
                                     const json& overrides,
                                     std::optional<std::uint64_t> seed_flag,
                                     std::optional<std::string> out_flag,
                                     std::optional<std::string> format_flag) {
  ExperimentConfig cfg;
  cfg.subcommand = subcommand;
  json file = json::object();
  if (config_path) {
    std::ifstream in(*config_path);
    if (!in) throw validation_error("config: cannot open " + *config_path);
    try {
      in >> file;
    } catch (const json::parse_error& e) {
      throw validation_error(std::string("config: invalid JSON: ") + e.what());
    }
    if (!file.is_object()) throw validation_error("config: expected a JSON object");
    if (file.contains("subcommand") && file["subcommand"] != subcommand)
      throw validation_error("config: file is for subcommand " + file["subcommand"].dump() +
                             ", invoked '" + subcommand + "'");
  }
  cfg.params = file;
  cfg.params.erase("subcommand");
  cfg.params.erase("seed");
  cfg.params.erase("out");
  cfg.params.erase("format");
  for (const auto& [key, value] : overrides.items()) cfg.params[key] = value;

  if (seed_flag) {
    cfg.seed = *seed_flag;
  } else if (file.contains("seed")) {
    if (!detail::is_count(file["seed"])) throw validation_error("config: seed must be a nonnegative integer");
    cfg.seed = file["seed"].get<std::uint64_t>();
  } else if (const char* env = std::getenv("HEAVYTAIL_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (...) {
      throw validation_error("HEAVYTAIL_SEED must be a nonnegative integer");
    }
  }
  auto file_string = [&file](const char* key, const std::string& fallback) {
    if (!file.contains(key)) return fallback;
    if (!file[key].is_string())
      throw validation_error(std::string("config: '") + key + "' must be a string");
    return file[key].get<std::string>();
  };
  cfg.out_dir = out_flag ? *out_flag : file_string("out", ".");
  cfg.format = format_flag ? *format_flag : file_string("format", "csv");
  return cfg;
}

}  // namespace heavytail::cli
