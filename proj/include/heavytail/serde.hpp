// Copyright (c) 2026 the heavytail authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <charconv>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "heavytail/distributions.hpp"
#include "heavytail/errors.hpp"

namespace heavytail {

// Compact textual form for distributions, shared by CLI flags and JSON
// configs: degenerate(c), exponential(rate), laplace(rate), normal(sigma),
// pareto(alpha), sympareto(alpha), uniform(lo,hi), stable(alpha),
// empirical(v1,v2,...), ptd(base,p[,half_width]).

namespace detail {

inline std::string_view trim_view(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

inline double parse_strict_double(std::string_view s, const std::string& context) {
  s = trim_view(s);
  double value = 0.0;
  const char* begin = s.data();
  auto [ptr, ec] = std::from_chars(begin, begin + s.size(), value);
  if (ec != std::errc() || ptr != begin + s.size())
    throw validation_error("distribution: bad numeric argument '" + std::string(s) + "' in " + context);
  return value;
}

/// Splits "a,b,ptd(c,d)" at top-level commas only.
inline std::vector<std::string_view> split_args(std::string_view s) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == ',' && depth == 0) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

}  // namespace detail

inline DistributionSpec parse_distribution(std::string_view text) {
  using detail::parse_strict_double;
  const std::string_view s = detail::trim_view(text);
  const std::size_t open = s.find('(');
  if (open == std::string_view::npos || s.back() != ')')
    throw validation_error("distribution: expected name(args), got '" + std::string(s) + "'");
  const std::string name(detail::trim_view(s.substr(0, open)));
  const std::string_view inner = s.substr(open + 1, s.size() - open - 2);
  const auto args = detail::split_args(inner);
  const std::string ctx(s);

  auto need = [&](std::size_t count) {
    if (args.size() != count)
      throw validation_error("distribution: '" + name + "' expects " + std::to_string(count) +
                             " argument(s) in " + ctx);
  };

  DistributionSpec spec;
  if (name == "degenerate") {
    need(1);
    spec = Degenerate{parse_strict_double(args[0], ctx)};
  } else if (name == "exponential") {
    need(1);
    spec = Exponential{parse_strict_double(args[0], ctx)};
  } else if (name == "laplace") {
    need(1);
    spec = Laplace{parse_strict_double(args[0], ctx)};
  } else if (name == "normal") {
    need(1);
    spec = Normal{parse_strict_double(args[0], ctx)};
  } else if (name == "pareto") {
    need(1);
    spec = ParetoI{parse_strict_double(args[0], ctx)};
  } else if (name == "sympareto") {
    need(1);
    spec = SymmetricPareto{parse_strict_double(args[0], ctx)};
  } else if (name == "uniform") {
    need(2);
    spec = Uniform{parse_strict_double(args[0], ctx), parse_strict_double(args[1], ctx)};
  } else if (name == "stable") {
    need(1);
    spec = StrictlyStable{parse_strict_double(args[0], ctx)};
  } else if (name == "empirical") {
    if (args.empty()) throw validation_error("distribution: empirical needs values in " + ctx);
    std::vector<double> values;
    values.reserve(args.size());
    for (const auto& a : args) values.push_back(parse_strict_double(a, ctx));
    spec = make_empirical(std::move(values));
  } else if (name == "ptd") {
    if (args.size() != 2 && args.size() != 3)
      throw validation_error("distribution: ptd expects (base,p[,half_width]) in " + ctx);
    DistributionSpec base = parse_distribution(args[0]);
    const double p = parse_strict_double(args[1], ctx);
    const double hw = args.size() == 3 ? parse_strict_double(args[2], ctx) : 0.0;
    spec = PutTailDownMix{std::make_shared<DistributionSpecBox>(DistributionSpecBox{std::move(base)}),
                          p, hw};
  } else {
    throw validation_error("distribution: unknown name '" + name + "'");
  }
  validate(spec);
  return spec;
}

/// Inverse of parse_distribution: a string that reparses to the same spec.
inline std::string distribution_to_string(const DistributionSpec& spec) {
  return std::visit(
      [](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        std::ostringstream os;
        os.precision(17);
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
          os << "ptd(" << distribution_to_string(d.base->spec) << "," << d.p;
          if (d.half_width > 0.0) os << "," << d.half_width;
          os << ")";
        } else {
          os << "empirical(";
          for (std::size_t i = 0; i < d.values.size(); ++i) {
            if (i) os << ",";
            os << d.values[i];
          }
          os << ")";
        }
        return os.str();
      },
      spec);
}

}  // namespace heavytail
