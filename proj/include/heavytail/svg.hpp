// Copyright (c) 2026 the heavytail authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "heavytail/errors.hpp"

namespace heavytail {

/// Minimal static line/scatter plot writer. CSV output is authoritative;
/// these renderings exist so a run can be eyeballed without extra tooling.
class SvgPlot {
 public:
  SvgPlot(std::string title, std::string x_label, std::string y_label, bool log_x = false,
          bool log_y = false)
      : title_(std::move(title)),
        x_label_(std::move(x_label)),
        y_label_(std::move(y_label)),
        log_x_(log_x),
        log_y_(log_y) {}

  void add_series(std::span<const double> xs, std::span<const double> ys, std::string color,
                  bool line) {
    if (xs.size() != ys.size()) throw validation_error("svg: series size mismatch");
    Series s;
    s.color = std::move(color);
    s.line = line;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double x = xs[i], y = ys[i];
      if (log_x_) {
        if (!(x > 0.0)) continue;
        x = std::log10(x);
      }
      if (log_y_) {
        if (!(y > 0.0)) continue;
        y = std::log10(y);
      }
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      s.x.push_back(x);
      s.y.push_back(y);
    }
    series_.push_back(std::move(s));
  }

  void write_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error("svg: cannot open for writing: " + path);
    out << render();
  }

  std::string render() const {
    double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
    bool any = false;
    for (const auto& s : series_) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!any) {
          x_lo = x_hi = s.x[i];
          y_lo = y_hi = s.y[i];
          any = true;
        }
        x_lo = std::min(x_lo, s.x[i]);
        x_hi = std::max(x_hi, s.x[i]);
        y_lo = std::min(y_lo, s.y[i]);
        y_hi = std::max(y_hi, s.y[i]);
      }
    }
    if (x_hi == x_lo) x_hi = x_lo + 1;
    if (y_hi == y_lo) y_hi = y_lo + 1;

    const double w = 640, h = 440, ml = 70, mr = 20, mt = 40, mb = 50;
    auto px = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * (w - ml - mr); };
    auto py = [&](double y) { return h - mb - (y - y_lo) / (y_hi - y_lo) * (h - mt - mb); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << w / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
       << title_ << "</text>\n";
    // axes
    os << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\""
       << h - mb << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
       << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
      const double fx = x_lo + (x_hi - x_lo) * i / 4.0;
      const double fy = y_lo + (y_hi - y_lo) * i / 4.0;
      os << "<text x=\"" << px(fx) << "\" y=\"" << h - mb + 18
         << "\" text-anchor=\"middle\" font-size=\"11\">" << tick(fx, log_x_) << "</text>\n";
      os << "<text x=\"" << ml - 8 << "\" y=\"" << py(fy) + 4
         << "\" text-anchor=\"end\" font-size=\"11\">" << tick(fy, log_y_) << "</text>\n";
    }
    os << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 12
       << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label_ << "</text>\n";
    os << "<text x=\"16\" y=\"" << (mt + h - mb) / 2
       << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
       << (mt + h - mb) / 2 << ")\">" << y_label_ << "</text>\n";

    for (const auto& s : series_) {
      if (s.line && s.x.size() > 1) {
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i)
          os << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i])) << ' ';
        os << "\"/>\n";
      } else {
        for (std::size_t i = 0; i < s.x.size(); ++i)
          os << "<circle cx=\"" << fmt(px(s.x[i])) << "\" cy=\"" << fmt(py(s.y[i]))
             << "\" r=\"2\" fill=\"" << s.color << "\"/>\n";
      }
    }
    os << "</svg>\n";
    return os.str();
  }

 private:
  struct Series {
    std::vector<double> x, y;
    std::string color;
    bool line = false;
  };

  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
  }

  std::string tick(double v, bool log_axis) const {
    char buf[32];
    if (log_axis)
      std::snprintf(buf, sizeof(buf), "1e%.2g", v);
    else
      std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
  }

  std::string title_, x_label_, y_label_;
  bool log_x_, log_y_;
  std::vector<Series> series_;
};

}  // namespace heavytail
