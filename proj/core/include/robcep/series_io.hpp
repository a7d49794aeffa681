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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "robcep/core.hpp"

namespace robcep {

/// A series as read from disk. `population` and `replicate` are 0 when the
/// source carries no label (e.g. a wide CSV with free-form headers).
struct NamedSeries {
  std::string name;
  int population = 0;
  int replicate = 0;
  Series values;

  bool labeled() const noexcept { return population > 0 && replicate > 0; }
};

enum class SeriesLayout {
  kWide,  // one column per replicate, header pop<j>_rep<k>
  kLong,  // population,replicate,t,value
};

/// "pop<j>_rep<k>"
std::string series_column_name(int population, int replicate);

/// Parses "pop<j>_rep<k>"; returns false for anything else.
bool parse_series_column_name(const std::string& name, int& population, int& replicate);

/// Sniffs the layout from the header line.
SeriesLayout detect_layout(const std::string& header_line);

/// Reads either layout. `source` is used in ParseError messages.
std::vector<NamedSeries> read_series_csv(std::istream& in, const std::string& source);
std::vector<NamedSeries> read_series_file(const std::string& path);

/// Writers emit shortest round-trip decimal representations, so
/// read(write(x)) reproduces every double bit for bit.
void write_series_wide(std::ostream& out, const std::vector<NamedSeries>& series);
void write_series_long(std::ostream& out, const std::vector<NamedSeries>& series);

/// Builds a validated ReplicateSet; every series must be labeled.
ReplicateSet to_replicate_set(const std::vector<NamedSeries>& series);
std::vector<NamedSeries> from_replicate_set(const ReplicateSet& set);

/// Shortest representation that round-trips through std::from_chars.
std::string format_double(double v);
/// Strict full-string parse; throws ParseError on failure.
double parse_double(const std::string& token, const std::string& source, std::size_t line);

}  // namespace robcep
