// Copyright (c) 2026 the heavytail authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heavytail/cli.hpp"

namespace {

using heavytail::cli::json;

struct GlobalFlags {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> format;
};

void add_global_flags(CLI::App* sub, GlobalFlags& flags) {
  sub->add_option_function<std::string>(
      "--config", [&flags](const std::string& v) { flags.config = v; },
      "JSON config supplying parameters for this run");
  sub->add_option_function<std::uint64_t>(
      "--seed", [&flags](std::uint64_t v) { flags.seed = v; },
      "master seed (fallback: config, then HEAVYTAIL_SEED env)");
  sub->add_option_function<std::string>(
      "--out", [&flags](const std::string& v) { flags.out = v; }, "output directory");
  sub->add_option_function<std::string>(
      "--format", [&flags](const std::string& v) { flags.format = v; },
      "output format: csv or svg (svg adds plots)")
      ->check(CLI::IsMember({"csv", "svg"}));
}

// Collects only the flags the user actually passed, so config values are
// not clobbered by defaults.
class Overrides {
 public:
  explicit Overrides(CLI::App* sub) : sub_(sub) {}

  void number(const std::string& flag, const std::string& key, const std::string& help) {
    sub_->add_option_function<double>(
        "--" + flag, [this, key](double v) { values_[key] = v; }, help);
  }
  void count(const std::string& flag, const std::string& key, const std::string& help) {
    sub_->add_option_function<std::uint64_t>(
        "--" + flag, [this, key](std::uint64_t v) { values_[key] = v; }, help);
  }
  void text(const std::string& flag, const std::string& key, const std::string& help) {
    sub_->add_option_function<std::string>(
        "--" + flag, [this, key](const std::string& v) { values_[key] = v; }, help);
  }
  void count_list(const std::string& flag, const std::string& key, const std::string& help) {
    sub_->add_option_function<std::vector<std::uint64_t>>(
        "--" + flag,
        [this, key](const std::vector<std::uint64_t>& v) { values_[key] = v; }, help)
        ->delimiter(',');
  }

  const json& values() const { return values_; }

 private:
  CLI::App* sub_;
  json values_ = json::object();
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heavy-tail simulation and outlier diagnostics toolkit"};
  app.require_subcommand(1);

  struct SubEntry {
    CLI::App* sub;
    GlobalFlags flags;
    std::unique_ptr<Overrides> overrides;
  };
  std::vector<std::unique_ptr<SubEntry>> entries;

  auto make_sub = [&](const std::string& name, const std::string& help) -> Overrides& {
    auto entry = std::make_unique<SubEntry>();
    entry->sub = app.add_subcommand(name, help);
    add_global_flags(entry->sub, entry->flags);
    entry->overrides = std::make_unique<Overrides>(entry->sub);
    entries.push_back(std::move(entry));
    return *entries.back()->overrides;
  };

  {
    auto& o = make_sub("simulate", "draw a sample from a catalogue distribution");
    o.text("dist", "dist", "distribution, e.g. pareto(2) or ptd(laplace(1),0.5)");
    o.count("n", "n", "sample size");
  }
  {
    auto& o = make_sub("gaps", "gaps between transformed ordered |x|");
    o.text("dist", "dist", "distribution");
    o.count("n", "n", "sample size");
    o.text("transform", "transform", "identity|log|arctan");
  }
  {
    auto& o = make_sub("outlier-rate", "fraction beyond k sample standard deviations");
    o.text("dist", "dist", "distribution");
    o.count("n", "n", "sample size");
    o.number("k", "k", "threshold in standard deviations");
  }
  {
    auto& o = make_sub("theorem1", "outlier-rate decay across sample sizes for stable laws");
    o.number("alpha", "alpha", "stability index in (0,2]; 2 gives the normal contrast");
    o.number("k", "k", "threshold in standard deviations");
    o.count_list("n-grid", "n_grid", "comma-separated sample sizes, strictly increasing");
    o.count("trials", "trials", "trials per sample size");
  }
  {
    auto& o = make_sub("put-tail-down", "atom-at-zero mixture and its outlier comparison");
    o.text("base", "base", "symmetric finite-variance base distribution");
    o.number("p", "p", "mass moved to the origin, in (0,1)");
    o.number("k", "k", "threshold in standard deviations");
    o.number("eps", "eps", "smoothing half-width (default 0: keep the atom)");
    o.count("mc-trials", "mc_trials", "Monte Carlo comparison trials (default 0: skip)");
    o.count("mc-n", "mc_n", "Monte Carlo sample size per trial");
  }
  {
    auto& o = make_sub("lepage", "truncated series sum Y_k / G_k^a");
    o.number("a", "a", "depression exponent a > 1/2 (tail index 1/a)");
    o.text("signal", "signal", "signal law (default degenerate(1))");
    o.count("n", "n", "sample size");
    o.count("terms", "terms", "series length (default: from tolerance)");
    o.number("tolerance", "tolerance", "remainder bound target (default 1e-4)");
  }
  {
    auto& o = make_sub("capital", "geometric random products (prod X_j)^p");
    o.text("factor", "factor", "positive factor law, e.g. uniform(1,2.718281828459045)");
    o.number("p", "p", "unfavorable-event rate in (0,1]");
    o.count("n", "n", "sample size");
  }
  {
    auto& o = make_sub("random-min", "minimum of a geometric number of factors");
    o.text("factor", "factor", "factor law, e.g. uniform(0,1)");
    o.number("p", "p", "geometric success rate in (0,1]");
    o.count("n", "n", "sample size");
  }
  {
    auto& o = make_sub("tail-bound", "decay certificates from a tabulated survival curve");
    o.text("input", "input", "two-column CSV (t,S)");
    o.number("v", "v", "anchor abscissa (v > 1)");
    o.number("u-max", "u_max", "largest u to bound (default 1000)");
    o.count("points", "points", "grid points (default 64)");
    o.text("phi", "phi", "link function: exp|reciprocal (default exp)");
  }
  {
    auto& o = make_sub("fit-pareto", "power-law fit by the log-mean estimator");
    o.text("input", "input", "CSV of positive values");
    o.text("column", "column", "column name when the file has a header");
    o.number("x-min", "x_min", "fit threshold (default: sample minimum)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage problems are validation failures
  }

  for (const auto& entry : entries) {
    if (!entry->sub->parsed()) continue;
    try {
      const heavytail::cli::ExperimentConfig cfg = heavytail::cli::merge_config(
          entry->sub->get_name(), entry->flags.config, entry->overrides->values(),
          entry->flags.seed, entry->flags.out, entry->flags.format);
      return heavytail::cli::run_config(cfg);
    } catch (const std::exception& e) {  // config assembly problems are validation failures
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return 1;
}
