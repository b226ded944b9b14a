// Copyright 2026 The fbmsup Authors.
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

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fbmsup/hurst.hpp"

namespace fbmsup::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailure = 1;
inline constexpr int kExitIoError = 2;
inline constexpr int kExitUsage = 64;

inline constexpr double kGridFloor = 1e-6;
inline constexpr double kGridCeiling = 1.0 - 1e-6;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
};

// Parses "start:stop:step". Throws UsageError.
GridSpec parse_grid(const std::string& text);

struct Grid {
  std::vector<Hurst> points;
  std::vector<std::string> warnings;
};

// Expands a grid, clamping endpoints into [kGridFloor, kGridCeiling]. The
// point count is fixed up front from the step so that rounding never drops
// or duplicates the stop value.
Grid expand_grid(const GridSpec& spec);

enum class Command { kBounds, kMu, kOmega, kValidate, kFigure };
enum class Format { kCsv, kJson };
enum class Figure { kAllBounds, kMuCompare, kRatio };

struct RunConfig {
  Command command = Command::kBounds;
  std::optional<GridSpec> grid;
  std::optional<double> h;
  std::uint64_t seed = 42;
  std::uint64_t paths = 2000;
  std::size_t steps = 4096;
  double drift = 1.0;
  Figure figure = Figure::kAllBounds;
  std::string output_path;  // empty: standard output
  Format format = Format::kCsv;
  unsigned workers = 0;
};

// Empty cells mark bounds that do not apply in the regime of the row.
using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct ValidationReport {
  Table table;
  bool all_passed = true;
};

Table run_bounds(const RunConfig& config);
Table run_mu(const RunConfig& config);
Table run_omega(const RunConfig& config);
Table run_figure(const RunConfig& config);
ValidationReport run_validate(const RunConfig& config);

std::string format_number(double v);
std::string to_csv(const Table& table);
std::string to_json(const Table& table);
// Parses then re-serializes a JSON document with the writer used by to_json.
std::string reserialize_json(const std::string& text);

// Full command-line entry point; returns the process exit code.
int run_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace fbmsup::cli
