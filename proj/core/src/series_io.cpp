// Copyright 2026 The robcep Authors.
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

#include "robcep/series_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

#include "robcep/error.hpp"

namespace robcep {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  for (auto& c : cells) {
    const auto b = c.find_first_not_of(" \t\r");
    const auto e = c.find_last_not_of(" \t\r");
    c = (b == std::string::npos) ? std::string() : c.substr(b, e - b + 1);
  }
  return cells;
}

bool getline_nonempty(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) return true;
  }
  return false;
}

int parse_int(const std::string& token, const std::string& source, std::size_t line) {
  int v = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(source, line, "expected an integer, got '" + token + "'");
  }
  return v;
}

std::vector<NamedSeries> read_wide(std::istream& in, const std::string& source,
                                   const std::string& header, std::size_t& lineno) {
  const auto names = split_csv_line(header);
  std::vector<NamedSeries> out(names.size());
  for (std::size_t c = 0; c < names.size(); ++c) {
    out[c].name = names[c];
    int j = 0;
    int k = 0;
    if (parse_series_column_name(names[c], j, k)) {
      out[c].population = j;
      out[c].replicate = k;
    }
  }
  std::vector<bool> ended(names.size(), false);
  std::string line;
  while (getline_nonempty(in, line, lineno)) {
    const auto cells = split_csv_line(line);
    if (cells.size() > names.size()) {
      throw ParseError(source, lineno, "row has " + std::to_string(cells.size()) +
                                           " cells but header has " +
                                           std::to_string(names.size()));
    }
    for (std::size_t c = 0; c < names.size(); ++c) {
      if (c >= cells.size() || cells[c].empty()) {
        ended[c] = true;
        continue;
      }
      if (ended[c]) {
        throw ParseError(source, lineno, "column '" + names[c] + "' has a gap");
      }
      out[c].values.push_back(parse_double(cells[c], source, lineno));
    }
  }
  return out;
}

std::vector<NamedSeries> read_long(std::istream& in, const std::string& source,
                                   std::size_t& lineno) {
  // Keyed by (population, replicate); insertion order preserved separately.
  std::map<std::pair<int, int>, std::map<int, double>> points;
  std::vector<std::pair<int, int>> order;
  std::vector<std::size_t> first_line;
  std::string line;
  while (getline_nonempty(in, line, lineno)) {
    const auto cells = split_csv_line(line);
    if (cells.size() != 4) {
      throw ParseError(source, lineno, "expected 4 cells (population,replicate,t,value)");
    }
    const int j = parse_int(cells[0], source, lineno);
    const int k = parse_int(cells[1], source, lineno);
    const int t = parse_int(cells[2], source, lineno);
    const double v = parse_double(cells[3], source, lineno);
    const auto key = std::make_pair(j, k);
    auto [it, inserted] = points.try_emplace(key);
    if (inserted) {
      order.push_back(key);
      first_line.push_back(lineno);
    }
    if (!it->second.emplace(t, v).second) {
      throw ParseError(source, lineno, "duplicate time index " + std::to_string(t) +
                                           " for series " + series_column_name(j, k));
    }
  }
  std::vector<NamedSeries> out;
  out.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& key = order[i];
    NamedSeries s;
    s.population = key.first;
    s.replicate = key.second;
    s.name = series_column_name(key.first, key.second);
    const auto& pts = points.at(key);
    int expected = pts.begin()->first;
    for (const auto& [t, v] : pts) {
      if (t != expected++) {
        throw ParseError(source, first_line[i], "series " + s.name + " skips time index " +
                                                    std::to_string(expected - 1));
      }
    }
    s.values.reserve(pts.size());
    for (const auto& [t, v] : pts) s.values.push_back(v);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::string series_column_name(int population, int replicate) {
  return "pop" + std::to_string(population) + "_rep" + std::to_string(replicate);
}

bool parse_series_column_name(const std::string& name, int& population, int& replicate) {
  if (name.rfind("pop", 0) != 0) return false;
  const auto sep = name.find("_rep");
  if (sep == std::string::npos || sep <= 3) return false;
  const std::string a = name.substr(3, sep - 3);
  const std::string b = name.substr(sep + 4);
  int j = 0;
  int k = 0;
  auto r1 = std::from_chars(a.data(), a.data() + a.size(), j);
  auto r2 = std::from_chars(b.data(), b.data() + b.size(), k);
  if (r1.ec != std::errc() || r1.ptr != a.data() + a.size()) return false;
  if (r2.ec != std::errc() || r2.ptr != b.data() + b.size()) return false;
  if (j < 1 || k < 1) return false;
  population = j;
  replicate = k;
  return true;
}

SeriesLayout detect_layout(const std::string& header_line) {
  const auto cells = split_csv_line(header_line);
  if (cells.size() == 4 && cells[0] == "population" && cells[1] == "replicate" &&
      cells[2] == "t" && cells[3] == "value") {
    return SeriesLayout::kLong;
  }
  return SeriesLayout::kWide;
}

std::vector<NamedSeries> read_series_csv(std::istream& in, const std::string& source) {
  std::size_t lineno = 0;
  std::string header;
  if (!getline_nonempty(in, header, lineno)) {
    throw ParseError(source, lineno, "empty input, expected a header row");
  }
  if (detect_layout(header) == SeriesLayout::kLong) return read_long(in, source, lineno);
  return read_wide(in, source, header, lineno);
}

std::vector<NamedSeries> read_series_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return read_series_csv(in, path);
}

void write_series_wide(std::ostream& out, const std::vector<NamedSeries>& series) {
  std::size_t rows = 0;
  for (std::size_t c = 0; c < series.size(); ++c) {
    out << (c ? "," : "") << series[c].name;
    rows = std::max(rows, series[c].values.size());
  }
  out << '\n';
  for (std::size_t t = 0; t < rows; ++t) {
    for (std::size_t c = 0; c < series.size(); ++c) {
      if (c) out << ',';
      if (t < series[c].values.size()) out << format_double(series[c].values[t]);
    }
    out << '\n';
  }
}

void write_series_long(std::ostream& out, const std::vector<NamedSeries>& series) {
  out << "population,replicate,t,value\n";
  for (const auto& s : series) {
    if (!s.labeled()) {
      throw DomainError("long layout requires labeled series; '" + s.name + "' has none");
    }
    for (std::size_t t = 0; t < s.values.size(); ++t) {
      out << s.population << ',' << s.replicate << ',' << (t + 1) << ','
          << format_double(s.values[t]) << '\n';
    }
  }
}

ReplicateSet to_replicate_set(const std::vector<NamedSeries>& series) {
  std::vector<Replicate> reps;
  reps.reserve(series.size());
  for (const auto& s : series) {
    if (!s.labeled()) {
      throw DomainError("series '" + s.name +
                        "' carries no population label (expected pop<j>_rep<k>)");
    }
    reps.emplace_back(s.values, s.population, s.replicate);
  }
  return ReplicateSet(std::move(reps));
}

std::vector<NamedSeries> from_replicate_set(const ReplicateSet& set) {
  std::vector<NamedSeries> out;
  out.reserve(set.size());
  for (const auto& r : set.replicates()) {
    out.push_back({series_column_name(r.population, r.index), r.population, r.index,
                   r.values});
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

double parse_double(const std::string& token, const std::string& source, std::size_t line) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError(source, line, "expected a number, got '" + token + "'");
  }
  return v;
}

}  // namespace robcep
