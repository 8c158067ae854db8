// Copyright (c) 2026 the heavytail authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "heavytail/errors.hpp"

namespace heavytail {

// CSV conventions used throughout: comma separator, '.' decimal point, LF
// line endings, UTF-8, mandatory header row on every emitted file.

/// Deterministic numeric formatting for output files (12 significant
/// digits; plain "%g" keeps integers free of trailing zeros).
inline std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size())
      throw validation_error("csv: row width does not match header");
    rows_.push_back(std::move(cells));
  }

  std::string to_string() const {
    std::ostringstream os;
    write_line(os, header_);
    for (const auto& row : rows_) write_line(os, row);
    return os.str();
  }

  void write_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error("csv: cannot open for writing: " + path);
    out << to_string();
  }

 private:
  static void write_line(std::ostringstream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << cells[i];
    }
    os << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

namespace detail {

inline std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

/// Strict double grammar: the whole cell must parse, so "1,5" or "1_000"
/// style separators are rejected upstream as extra cells / parse errors.
inline std::optional<double> parse_number(std::string_view cell) {
  cell = trim(cell);
  if (cell.empty()) return std::nullopt;
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

}  // namespace detail

/// Reads one numeric column. Headerless single-column files parse directly;
/// otherwise the first row is a header and `column` (default: the only or
/// first column) selects by name. Blank lines are skipped; any non-numeric
/// cell is an error carrying its 1-based line number.
inline std::vector<double> ingest_csv(const std::string& path,
                                      std::optional<std::string> column = std::nullopt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("ingest_csv: cannot open: " + path);
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> col_index;
  std::optional<std::size_t> width;  // column count fixed by the first row
  bool header_decided = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view trimmed = detail::trim(line);
    if (trimmed.empty()) continue;
    const auto cells = detail::split_cells(trimmed);
    if (!header_decided) {
      header_decided = true;
      width = cells.size();
      const bool first_is_numeric = detail::parse_number(cells[0]).has_value();
      if (!first_is_numeric) {
        // Header row: resolve the column by name.
        if (column) {
          for (std::size_t i = 0; i < cells.size(); ++i)
            if (detail::trim(cells[i]) == *column) col_index = i;
          if (!col_index)
            throw validation_error("ingest_csv: column '" + *column + "' not found in header");
        } else {
          col_index = 0;
        }
        continue;
      }
      col_index = 0;
      if (column) throw validation_error("ingest_csv: file has no header to resolve column '" + *column + "'");
    }
    // A fixed width rejects stray separators: a "1,5" decimal or "1,000"
    // thousands cell splits into extra columns and fails here.
    if (cells.size() != *width) {
      std::ostringstream os;
      os << "ingest_csv: parse error at line " << line_no << ": expected " << *width
         << " column(s), found " << cells.size();
      throw validation_error(os.str());
    }
    const auto parsed = detail::parse_number(cells[*col_index]);
    if (!parsed) {
      std::ostringstream os;
      os << "ingest_csv: non-numeric cell at line " << line_no << ": '"
         << std::string(detail::trim(cells[*col_index])) << "'";
      throw validation_error(os.str());
    }
    values.push_back(*parsed);
  }
  return values;
}

/// Two-column (t, S) survival curve reader; header row optional.
inline std::pair<std::vector<double>, std::vector<double>> ingest_survival_csv(
    const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("ingest_survival_csv: cannot open: " + path);
  std::vector<double> t, s;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view trimmed = detail::trim(line);
    if (trimmed.empty()) continue;
    const auto cells = detail::split_cells(trimmed);
    if (cells.size() < 2) {
      std::ostringstream os;
      os << "ingest_survival_csv: line " << line_no << " needs two columns (t,S)";
      throw validation_error(os.str());
    }
    const auto a = detail::parse_number(cells[0]);
    const auto b = detail::parse_number(cells[1]);
    if (first && (!a || !b)) {
      first = false;  // header row
      continue;
    }
    first = false;
    if (!a || !b) {
      std::ostringstream os;
      os << "ingest_survival_csv: non-numeric cell at line " << line_no;
      throw validation_error(os.str());
    }
    t.push_back(*a);
    s.push_back(*b);
  }
  return {std::move(t), std::move(s)};
}

}  // namespace heavytail
