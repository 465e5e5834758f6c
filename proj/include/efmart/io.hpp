// Copyright 2026 The efmart Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EFMART_IO_HPP_
#define EFMART_IO_HPP_

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "efmart/errors.hpp"
#include "efmart/forecast.hpp"
#include "efmart/sde.hpp"
#include "efmart/time_grid.hpp"

namespace efmart {

/// Shortest-safe round-trip text for a double: 17 significant digits.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_path_csv(std::ostream& out, const Path& path) {
  out << "t,value\n";
  for (std::size_t k = 0; k < path.values.size(); ++k) {
    out << format_double(path.grid[k]) << ',' << format_double(path.values[k]) << '\n';
  }
}

inline void write_series_csv(std::ostream& out, const ForecastSeries& series) {
  out << "t,prob\n";
  for (std::size_t k = 0; k < series.probs.size(); ++k) {
    out << format_double(series.grid[k]) << ',' << format_double(series.probs[k]) << '\n';
  }
}

/// Two numeric columns read back from a `t,<name>` CSV.
struct Columns {
  std::vector<double> t;
  std::vector<double> values;
};

inline Columns read_two_column_csv(std::istream& in, std::string_view value_header) {
  std::string line;
  if (!std::getline(in, line)) throw SpecError("csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t," + std::string(value_header)) {
    throw SpecError("csv: expected header 't," + std::string(value_header) + "'");
  }
  Columns cols;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw SpecError("csv: row " + std::to_string(row) + " has no comma");
    }
    try {
      cols.t.push_back(std::stod(line.substr(0, comma)));
      cols.values.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw SpecError("csv: row " + std::to_string(row) + " is not numeric");
    }
  }
  return cols;
}

/// Rebuilds a Path from `t,value` CSV. The grid is reconstructed from the
/// first and last times and the row count, and must reproduce every t.
inline Path read_path_csv(std::istream& in, ProcessKind kind) {
  Columns cols = read_two_column_csv(in, "value");
  if (cols.t.size() < 2) throw SpecError("csv: a path needs at least two rows");
  Path path;
  path.kind = kind;
  path.grid = TimeGrid(cols.t.front(), cols.t.back(), cols.t.size() - 1);
  for (std::size_t k = 0; k < cols.t.size(); ++k) {
    if (path.grid[k] != cols.t[k]) {
      throw SpecError("csv: time column is not a uniform grid (row " +
                      std::to_string(k + 2) + ")");
    }
  }
  path.values = std::move(cols.values);
  return path;
}

/// `key = value` lines; `#` starts a comment. Later keys override earlier.
inline std::map<std::string, std::string> parse_key_values(std::istream& in) {
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw SpecError("config: line " + std::to_string(lineno) + " is not 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw SpecError("config: line " + std::to_string(lineno) + " has an empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

/// Parses a number, accepting scientific notation and a trailing '%'
/// ("100%" -> 1.0).
inline double parse_number(std::string_view text) {
  std::string s(text);
  bool percent = false;
  if (!s.empty() && s.back() == '%') {
    percent = true;
    s.pop_back();
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw SpecError("not a number: '" + std::string(text) + "'");
  }
  if (used != s.size()) throw SpecError("not a number: '" + std::string(text) + "'");
  return percent ? v / 100.0 : v;
}

inline std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  std::string item;
  std::stringstream ss{std::string(text)};
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_number(item));
  }
  return out;
}

}  // namespace efmart

#endif  // EFMART_IO_HPP_
