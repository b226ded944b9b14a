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

#include "fbmsup/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fbmsup/bounds.hpp"
#include "fbmsup/error.hpp"
#include "fbmsup/mc.hpp"

namespace fbmsup::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr char kVersion[] = "0.1.0";
constexpr double kBaseHorizon = 4.0;
constexpr double kTailHorizon = 64.0;
constexpr double kTailLevel = 1.0;

double parse_double(const std::string& text, const char* what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw UsageError(std::string("invalid ") + what + ": '" + text + "'");
  }
  return v;
}

// Rounds grid arithmetic noise away so that 0.01 * 7 prints as 0.07.
double tidy(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

double clamp_point(double v, std::vector<std::string>& warnings) {
  if (v < kGridFloor) {
    warnings.push_back("H=" + format_number(v) + " clamped to " +
                       format_number(kGridFloor));
    return kGridFloor;
  }
  if (v > kGridCeiling) {
    warnings.push_back("H=" + format_number(v) + " clamped to " +
                       format_number(kGridCeiling));
    return kGridCeiling;
  }
  return v;
}

Grid points_for(const RunConfig& config, const GridSpec& fallback) {
  if (config.h) {
    Grid g;
    g.points.emplace_back(clamp_point(*config.h, g.warnings));
    return g;
  }
  return expand_grid(config.grid.value_or(fallback));
}

std::string grid_text(const RunConfig& config, const GridSpec& fallback) {
  if (config.h) return format_number(*config.h);
  const GridSpec g = config.grid.value_or(fallback);
  return format_number(g.start) + ":" + format_number(g.stop) + ":" +
         format_number(g.step);
}

void add_common_meta(Table& table, const RunConfig& config, const char* name,
                     const GridSpec& fallback, const Grid& grid) {
  table.meta.emplace_back("command", name);
  table.meta.emplace_back("version", kVersion);
  table.meta.emplace_back("grid", grid_text(config, fallback));
  table.meta.emplace_back("drift", format_number(config.drift));
  for (const auto& w : grid.warnings) table.meta.emplace_back("warning", w);
}

Cell cell(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return std::monostate{};
  return *v;
}

Cell cell(double v) { return cell(std::optional<double>(v)); }

// Evaluates a bound, leaving the cell empty (with a warning) when the
// evaluation fails for numerical reasons at this H.
Cell guarded(Table& table, Hurst h, const char* what,
             const std::function<std::optional<double>()>& f) {
  try {
    return cell(f());
  } catch (const Error& e) {
    table.meta.emplace_back("warning", std::string(what) + " at H=" +
                                           format_number(h.value()) + ": " +
                                           e.what());
    return std::monostate{};
  }
}

void require_subdiffusive(const Grid& grid, const char* what) {
  for (const auto& h : grid.points) {
    if (h.value() > 0.5) {
      throw UsageError(std::string(what) + " is defined for H <= 0.5, got H=" +
                       format_number(h.value()));
    }
  }
}

void require_positive_drift(const RunConfig& config) {
  if (!(config.drift > 0.0) || !std::isfinite(config.drift)) {
    throw UsageError("--drift must be positive");
  }
}

const GridSpec kFullGrid{0.01, 0.99, 0.01};
const GridSpec kSubGrid{0.005, 0.5, 0.005};
const GridSpec kOmegaGrid{0.01, 0.5, 0.01};
const GridSpec kValidateGrid{0.5, 0.5, 1.0};

Table bounds_table(const RunConfig& config, const char* name) {
  require_positive_drift(config);
  const Grid grid = points_for(config, kFullGrid);
  Table t;
  add_common_meta(t, config, name, kFullGrid, grid);
  t.columns = {"H",  "L1", "L2",         "L3",      "L",     "U1",
               "U2", "U2_sudakov", "U2_circ", "U", "ratio"};
  for (const Hurst h : grid.points) {
    std::optional<BoundsReport> report;
    try {
      report = combined_bounds(h);
    } catch (const Error& e) {
      t.meta.emplace_back("warning", "bounds at H=" +
                                         format_number(h.value()) + ": " +
                                         e.what());
      std::vector<Cell> row(t.columns.size());
      row[0] = h.value();
      t.rows.push_back(std::move(row));
      continue;
    }
    const BoundsReport& r = *report;
    const auto s = [&](const std::optional<double>& v) -> Cell {
      if (!v) return std::monostate{};
      return cell(drift_rescale(h, config.drift, *v));
    };
    t.rows.push_back({h.value(), s(r.l1), s(r.l2), s(r.l3),
                      s(r.lower_combined), s(r.u1), s(r.u2), s(r.u2_sudakov),
                      s(r.u2_circ), s(r.upper_combined), cell(r.ratio)});
  }
  return t;
}

}  // namespace

GridSpec parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() != 3 || text.back() == ':') {
    throw UsageError("--h-grid expects start:stop:step, got '" + text + "'");
  }
  GridSpec g{parse_double(parts[0], "grid start"),
             parse_double(parts[1], "grid stop"),
             parse_double(parts[2], "grid step")};
  if (!(g.step > 0.0)) throw UsageError("grid step must be positive");
  if (g.start > g.stop) throw UsageError("grid start exceeds stop");
  if (g.start >= 1.0 || g.stop <= 0.0) {
    throw UsageError("grid does not intersect (0, 1)");
  }
  return g;
}

Grid expand_grid(const GridSpec& spec) {
  if (!(spec.step > 0.0)) throw UsageError("grid step must be positive");
  if (spec.start > spec.stop) throw UsageError("grid start exceeds stop");
  const double span = (spec.stop - spec.start) / spec.step;
  if (span > 1e7) throw UsageError("grid has too many points");
  const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  Grid g;
  for (std::size_t i = 0; i < n; ++i) {
    double v = tidy(spec.start + static_cast<double>(i) * spec.step);
    v = clamp_point(v, g.warnings);
    if (!g.points.empty() && g.points.back().value() == v) continue;
    g.points.emplace_back(v);
  }
  return g;
}

Table run_bounds(const RunConfig& config) {
  return bounds_table(config, "bounds");
}

Table run_mu(const RunConfig& config) {
  const Grid grid = points_for(config, kSubGrid);
  require_subdiffusive(grid, "mu");
  Table t;
  add_common_meta(t, config, "mu", kSubGrid, grid);
  t.columns = {"H",        "alpha",         "lower",
               "borovkov", "upper_sudakov", "upper_combined"};
  for (const Hurst h : grid.points) {
    for (const double alpha : {1.0, 1.0 / (1.0 - h.value())}) {
      std::vector<Cell> row{h.value(), alpha};
      std::optional<MuBounds> b;
      try {
        b = mu_bounds(h, alpha);
      } catch (const Error& e) {
        t.meta.emplace_back("warning", "mu at H=" + format_number(h.value()) +
                                           ": " + e.what());
      }
      if (b) {
        row.insert(row.end(), {cell(b->lower), cell(b->upper_borovkov),
                               cell(b->upper_sudakov),
                               cell(b->upper_combined)});
      } else {
        row.resize(t.columns.size());
      }
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

Table run_omega(const RunConfig& config) {
  const Grid grid = points_for(config, kOmegaGrid);
  require_subdiffusive(grid, "omega");
  Table t;
  add_common_meta(t, config, "omega", kOmegaGrid, grid);
  t.columns = {"H",      "omega",  "branch",       "omega0",
               "omega1", "omega2", "tau_circ",     "omega_direct",
               "argmin_T"};
  for (const Hurst h : grid.points) {
    const OmegaBreakdown b = omega(h);
    const auto d = omega_direct(h);
    t.rows.push_back(
        {h.value(), cell(b.omega),
         std::string(b.branch == OmegaBranch::kOmega0 ? "omega0" : "omega1"),
         cell(b.omega0), cell(b.omega1), cell(b.omega2), cell(b.tau_circ),
         cell(d.value), cell(d.argmin)});
  }
  return t;
}

Table run_figure(const RunConfig& config) {
  switch (config.figure) {
    case Figure::kAllBounds: {
      Table t = bounds_table(config, "figure");
      t.meta.insert(t.meta.begin() + 1, {"which", "all-bounds"});
      return t;
    }
    case Figure::kMuCompare: {
      const Grid grid = points_for(config, kSubGrid);
      require_subdiffusive(grid, "mu-compare");
      Table t;
      add_common_meta(t, config, "figure", kSubGrid, grid);
      t.meta.insert(t.meta.begin() + 1, {"which", "mu-compare"});
      t.columns = {"H", "borovkov", "sudakov", "combined"};
      for (const Hurst h : grid.points) {
        const Cell bor = guarded(t, h, "borovkov", [&]() -> std::optional<double> {
          return mu_one_upper_borovkov(h);
        });
        const Cell sud = guarded(t, h, "sudakov", [&]() -> std::optional<double> {
          return mu_one_upper_sudakov(h);
        });
        const Cell comb = guarded(t, h, "combined", [&]() -> std::optional<double> {
          return mu_bounds(h, 1.0).upper_combined;
        });
        t.rows.push_back({h.value(), bor, sud, comb});
      }
      return t;
    }
    case Figure::kRatio: {
      const Grid grid = points_for(config, kSubGrid);
      require_subdiffusive(grid, "ratio");
      Table t;
      add_common_meta(t, config, "figure", kSubGrid, grid);
      t.meta.insert(t.meta.begin() + 1, {"which", "ratio"});
      t.columns = {"H", "ratio"};
      for (const Hurst h : grid.points) {
        t.rows.push_back(
            {h.value(), guarded(t, h, "ratio", [&]() -> std::optional<double> {
               return combined_bounds(h).ratio;
             })});
      }
      return t;
    }
  }
  throw UsageError("unknown figure");
}

ValidationReport run_validate(const RunConfig& config) {
  require_positive_drift(config);
  if (config.paths < 2) throw UsageError("--paths must be at least 2");
  if (config.steps < 4 || !std::has_single_bit(config.steps)) {
    throw UsageError("--steps must be a power of two >= 4");
  }
  const Grid grid = points_for(config, kValidateGrid);
  ValidationReport report;
  Table& t = report.table;
  add_common_meta(t, config, "validate", kValidateGrid, grid);
  t.meta.emplace_back("seed", std::to_string(config.seed));
  t.meta.emplace_back("paths", std::to_string(config.paths));
  t.meta.emplace_back("steps", std::to_string(config.steps));
  t.meta.emplace_back("base_horizon", format_number(kBaseHorizon));
  t.columns = {"check", "H",     "estimate", "std_error", "lower",
               "upper", "horizon", "pass",   "note"};

  const std::size_t per_unit =
      static_cast<std::size_t>(static_cast<double>(config.steps) / kBaseHorizon);
  mc::McOptions options;
  options.workers = config.workers;

  const auto run_check = [&](const std::string& name, Hurst h,
                             const std::function<std::vector<Cell>()>& f) {
    std::vector<Cell> row;
    try {
      row = f();
    } catch (const std::exception& e) {
      row = {name,
             h.value(),
             std::monostate{},
             std::monostate{},
             std::monostate{},
             std::monostate{},
             std::monostate{},
             0.0,
             std::string("error: ") + e.what()};
    }
    if (std::get<double>(row[7]) != 1.0) report.all_passed = false;
    t.rows.push_back(std::move(row));
  };

  for (const Hurst h : grid.points) {
    std::optional<mc::McResult> sup;
    run_check("sup-sandwich", h, [&] {
      sup = mc::adaptive_horizon(h, config.drift, kBaseHorizon, per_unit,
                                 config.paths, config.seed, options);
      const BoundsReport b = combined_bounds(h);
      const double lo = drift_rescale(h, config.drift, b.lower_combined);
      const double hi = drift_rescale(h, config.drift, b.upper_combined);
      const double slack = 3.0 * sup->std_error;
      const bool pass =
          lo - slack <= sup->estimate && sup->estimate <= hi + slack;
      return std::vector<Cell>{"sup-sandwich", h.value(), sup->estimate,
                               sup->std_error, lo, hi, sup->horizon,
                               pass ? 1.0 : 0.0, sup->note};
    });
    if (h.value() == 0.5 && sup) {
      run_check("brownian-exact", h, [&] {
        const double exact = drift_rescale(h, config.drift, 0.5);
        const double slack = 3.0 * sup->std_error;
        const bool pass = std::abs(sup->estimate - exact) <= slack;
        return std::vector<Cell>{"brownian-exact", h.value(), sup->estimate,
                                 sup->std_error, exact - slack, exact + slack,
                                 sup->horizon, pass ? 1.0 : 0.0,
                                 std::string("exact value 1/(2c)")};
      });
    }
    run_check("tail-sandwich", h, [&] {
      const double lambda = lambda_u(kTailLevel, h);
      const auto steps = static_cast<std::size_t>(
          static_cast<double>(per_unit) * kTailHorizon);
      const auto p = mc::estimate_timechanged_tail(
          h, kTailLevel, kTailHorizon, steps, config.paths, config.seed,
          options);
      const double est = lambda * p.estimate;
      const double se = lambda * p.std_error;
      const double lo = 2.0 - 2.0 * h.value();
      const double hi = h.value() >= 0.5 ? 1.0 : 2.0;
      const bool pass = lo - 3.0 * se <= est && est <= hi + 3.0 * se;
      return std::vector<Cell>{"tail-sandwich", h.value(), est, se, lo, hi,
                               kTailHorizon, pass ? 1.0 : 0.0,
                               std::string("lambda(u,H) * P(u), u=1")};
    });
  }
  t.meta.emplace_back("result", report.all_passed ? "pass" : "fail");
  return report;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  return {};
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(table.columns[i]);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(cell_text(row[i]));
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Table& table) {
  Json doc = Json::object();
  Json meta = Json::array();
  for (const auto& [k, v] : table.meta) {
    meta.push_back(Json{{"key", k}, {"value", v}});
  }
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json r = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (std::holds_alternative<std::monostate>(row[i])) {
        r[table.columns[i]] = nullptr;
      } else {
        r[table.columns[i]] = cell_text(row[i]);
      }
    }
    rows.push_back(std::move(r));
  }
  doc["meta"] = std::move(meta);
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string reserialize_json(const std::string& text) {
  return Json::parse(text).dump(2) + "\n";
}

int run_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounds and Monte-Carlo checks for the expected supremum of "
               "drifted fractional Brownian motion"};
  // "--h" is the Hurst index, so help is long-form only.
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::optional<double> h;
  std::string grid;
  std::string format = "csv";
  std::string which = "all-bounds";

  auto* h_opt = app.add_option("--h", h, "single Hurst index");
  auto* grid_opt =
      app.add_option("--h-grid", grid, "Hurst grid start:stop:step");
  h_opt->excludes(grid_opt);
  app.add_option("--paths", config.paths, "Monte-Carlo paths")
      ->check(CLI::PositiveNumber);
  app.add_option("--steps", config.steps,
                 "grid steps over the base horizon (power of two)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", config.seed, "random seed");
  app.add_option("--out", config.output_path, "output file (default stdout)");
  app.add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--which", which, "figure: all-bounds, mu-compare, ratio")
      ->check(CLI::IsMember({"all-bounds", "mu-compare", "ratio"}));
  app.add_option("--drift", config.drift, "drift c > 0");
  app.add_option("--workers", config.workers,
                 "Monte-Carlo worker threads (0: all cores)");

  auto* bounds_cmd = app.add_subcommand("bounds", "all bounds over an H grid");
  auto* mu_cmd = app.add_subcommand("mu", "bounds on sup moments on [0,1]");
  auto* omega_cmd = app.add_subcommand("omega", "split-point constant");
  auto* validate_cmd =
      app.add_subcommand("validate", "Monte-Carlo checks of the bounds");
  auto* figure_cmd = app.add_subcommand("figure", "figure data");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    config.h = h;
    if (!grid.empty()) config.grid = parse_grid(grid);
    config.format = format == "json" ? Format::kJson : Format::kCsv;
    config.figure = which == "mu-compare" ? Figure::kMuCompare
                    : which == "ratio"    ? Figure::kRatio
                                          : Figure::kAllBounds;

    Table table;
    int code = kExitOk;
    if (bounds_cmd->parsed()) {
      config.command = Command::kBounds;
      table = run_bounds(config);
    } else if (mu_cmd->parsed()) {
      config.command = Command::kMu;
      table = run_mu(config);
    } else if (omega_cmd->parsed()) {
      config.command = Command::kOmega;
      table = run_omega(config);
    } else if (figure_cmd->parsed()) {
      config.command = Command::kFigure;
      table = run_figure(config);
    } else if (validate_cmd->parsed()) {
      config.command = Command::kValidate;
      ValidationReport report = run_validate(config);
      table = std::move(report.table);
      if (!report.all_passed) code = kExitValidationFailure;
    }

    if (config.format == Format::kCsv) {
      for (const auto& [k, v] : table.meta) {
        if (k == "warning") err << "warning: " << v << "\n";
      }
    }
    const std::string text =
        config.format == Format::kJson ? to_json(table) : to_csv(table);
    if (config.output_path.empty()) {
      out << text;
      out.flush();
      if (!out) throw IoError("failed writing to standard output");
    } else {
      std::ofstream file(config.output_path, std::ios::binary);
      if (!file) throw IoError("cannot open '" + config.output_path + "'");
      file << text;
      file.close();
      if (!file) throw IoError("failed writing '" + config.output_path + "'");
    }
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidationFailure;
  }
}

}  // namespace fbmsup::cli
