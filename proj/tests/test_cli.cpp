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


#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fbmsup/cli.hpp"

using namespace fbmsup;
using namespace fbmsup::cli;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "fbmsup");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  Run r;
  r.code = run_main(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  FAIL("missing column " << name);
  return 0;
}

}  // namespace

TEST_CASE("grid parsing") {
  const GridSpec g = parse_grid("0.1:0.5:0.1");
  CHECK(g.start == 0.1);
  CHECK(g.stop == 0.5);
  CHECK(g.step == 0.1);
  CHECK_THROWS_AS(parse_grid("0.5:0.1:0.1"), UsageError);
  CHECK_THROWS_AS(parse_grid("0.1:0.5:0"), UsageError);
  CHECK_THROWS_AS(parse_grid("0.1:0.5:-0.1"), UsageError);
  CHECK_THROWS_AS(parse_grid("0.1:0.5"), UsageError);
  CHECK_THROWS_AS(parse_grid("a:b:c"), UsageError);
  CHECK_THROWS_AS(parse_grid("0.1:0.5:0.1:"), UsageError);
}

TEST_CASE("grid expansion and clamping") {
  const Grid g = expand_grid({0.01, 0.99, 0.01});
  REQUIRE(g.points.size() == 99);
  CHECK(g.points.front().value() == 0.01);
  CHECK(g.points[6].value() == 0.07);
  CHECK(g.points.back().value() == 0.99);
  CHECK(g.warnings.empty());

  const Grid c = expand_grid({0.0, 1.0, 0.25});
  REQUIRE(c.points.size() == 5);
  CHECK(c.points.front().value() == kGridFloor);
  CHECK(c.points.back().value() == kGridCeiling);
  CHECK(c.warnings.size() == 2);
}

TEST_CASE("bounds: single Brownian row") {
  const Run r = run({"bounds", "--h-grid", "0.5:0.5:1"});
  CHECK(r.code == kExitOk);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  const auto& h = rows[0];
  CHECK(h == std::vector<std::string>{"H", "L1", "L2", "L3", "L", "U1", "U2",
                                      "U2_sudakov", "U2_circ", "U", "ratio"});
  CHECK(std::stod(rows[1][column(h, "L")]) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(std::stod(rows[1][column(h, "U")]) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(std::stod(rows[1][column(h, "U2_circ")]) == 0.5);
}

TEST_CASE("bounds: full grid, regimes and ordering") {
  const Run r = run({"bounds", "--h-grid", "0.01:0.99:0.01"});
  CHECK(r.code == kExitOk);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 100);
  const auto& h = rows[0];
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == h.size());
    const double H = std::stod(rows[i][0]);
    const double lo = std::stod(rows[i][column(h, "L")]);
    const double up = std::stod(rows[i][column(h, "U")]);
    CHECK(lo <= up * (1.0 + 1e-12));
    // Out-of-regime bounds are empty cells.
    CHECK(rows[i][column(h, "U1")].empty() == (H < 0.5));
    CHECK(rows[i][column(h, "L2")].empty() == (H > 0.5));
  }
}

TEST_CASE("bounds: drift rescaling") {
  const Run one = run({"bounds", "--h", "0.75"});
  const Run four = run({"bounds", "--h", "0.75", "--drift", "4"});
  const auto a = parse_csv(one.out);
  const auto b = parse_csv(four.out);
  const std::size_t u = column(a[0], "U");
  CHECK(std::stod(b[1][u]) == doctest::Approx(std::stod(a[1][u]) / 64.0).epsilon(1e-14));
  CHECK(a[1][column(a[0], "ratio")] == b[1][column(b[0], "ratio")]);
  CHECK(run({"bounds", "--h", "0.75", "--drift", "0"}).code == kExitUsage);
}

TEST_CASE("CSV format") {
  const Run a = run({"figure", "--which", "ratio"});
  const Run b = run({"figure", "--which", "ratio"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  REQUIRE(!a.out.empty());
  CHECK(a.out.back() == '\n');
  CHECK(a.out.find(';') == std::string::npos);
  const auto rows = parse_csv(a.out);
  CHECK(rows[0] == std::vector<std::string>{"H", "ratio"});
  CHECK(rows.size() == 101);
  double worst = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double v = std::stod(rows[i][1]);
    // Shortest round-trip text: printing the parsed value reproduces it.
    CHECK(format_number(v) == rows[i][1]);
    worst = std::max(worst, v);
  }
  CHECK(worst <= 18.063 + 1e-6);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(0.1 + 0.2) == "0.30000000000000004");
  CHECK(format_number(1e-6) == "1e-06");
  CHECK(std::stod(format_number(std::nextafter(1.0, 2.0))) ==
        std::nextafter(1.0, 2.0));
}

TEST_CASE("JSON output round-trips") {
  const Run r = run({"bounds", "--h-grid", "0:0.2:0.1", "--format", "json"});
  CHECK(r.code == kExitOk);
  CHECK(reserialize_json(r.out) == r.out);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.contains("meta"));
  REQUIRE(doc.contains("rows"));
  CHECK(doc["meta"].is_array());
  CHECK(doc["rows"].is_array());
  CHECK(doc["rows"].size() == 3);
  bool warned = false;
  for (const auto& m : doc["meta"]) warned |= m["key"] == "warning";
  CHECK(warned);
  CHECK(doc["rows"][0]["H"] == "1e-06");
  CHECK(doc["rows"][0]["U1"].is_null());
}

TEST_CASE("figures") {
  const Run mu = run({"figure", "--which", "mu-compare", "--h", "0.48"});
  CHECK(mu.code == kExitOk);
  const auto rows = parse_csv(mu.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::string>{"H", "borovkov", "sudakov", "combined"});
  CHECK(std::stod(rows[1][2]) < std::stod(rows[1][1]));

  const Run all = run({"figure", "--which", "all-bounds", "--h", "0.5"});
  const auto a = parse_csv(all.out);
  CHECK(std::stod(a[1][column(a[0], "U2_circ")]) == 0.5);

  CHECK(run({"figure", "--which", "mu-compare", "--h", "0.7"}).code == kExitUsage);
  CHECK(run({"figure", "--which", "ratio", "--h-grid", "0.4:0.6:0.1"}).code ==
        kExitUsage);
}

TEST_CASE("mu and omega commands") {
  const Run mu = run({"mu", "--h", "0.25"});
  CHECK(mu.code == kExitOk);
  CHECK(parse_csv(mu.out).size() == 3);
  const Run om = run({"omega", "--h-grid", "0.1:0.5:0.1"});
  CHECK(om.code == kExitOk);
  const auto rows = parse_csv(om.out);
  REQUIRE(rows.size() == 6);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][column(rows[0], "omega")]) ==
          doctest::Approx(std::stod(rows[i][column(rows[0], "omega_direct")]))
              .epsilon(1e-6));
  }
  CHECK(run({"omega", "--h", "0.7"}).code == kExitUsage);
}

TEST_CASE("usage and I/O errors") {
  CHECK(run({"bounds", "--h-grid", "0.1:0.5:0"}).code == kExitUsage);
  CHECK(run({"bounds", "--h-grid", "0.1:0.5:-1"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"bounds", "--bogus"}).code == kExitUsage);
  CHECK(run({"bounds", "--format", "xml"}).code == kExitUsage);
  CHECK(run({"bounds", "--h", "0.3", "--h-grid", "0.1:0.2:0.1"}).code ==
        kExitUsage);
  CHECK(run({"bounds", "--h", "0.5", "--out", "/nonexistent-dir/x.csv"}).code ==
        kExitIoError);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("output file matches standard output") {
  const std::string path = "fbmsup_test_out.csv";
  CHECK(run({"bounds", "--h", "0.3", "--out", path}).code == kExitOk);
  std::ifstream in(path, std::ios::binary);
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  CHECK(text == run({"bounds", "--h", "0.3"}).out);
  std::remove(path.c_str());
}

TEST_CASE("validate: Brownian point") {
  const Run r = run({"validate", "--h", "0.5", "--seed", "42"});
  const auto rows = parse_csv(r.out);
  const auto& h = rows[0];
  bool seen = false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][0] == "brownian-exact") {
      seen = true;
      CHECK(rows[i][column(h, "pass")] == "1");
    }
  }
  CHECK(seen);
  CHECK(r.code == kExitOk);
}

TEST_CASE("validate: tail sandwich at H = 0.7, bound sandwich at H = 0.4") {
  const Run a = run({"validate", "--h", "0.7"});
  const auto ra = parse_csv(a.out);
  for (std::size_t i = 1; i < ra.size(); ++i) {
    if (ra[i][0] == "tail-sandwich") CHECK(ra[i][column(ra[0], "pass")] == "1");
  }
  const Run b = run({"validate", "--h", "0.4", "--format", "json"});
  const auto doc = nlohmann::json::parse(b.out);
  bool seen = false;
  for (const auto& row : doc["rows"]) {
    if (row["check"] == "sup-sandwich") {
      seen = true;
      CHECK(row["pass"] == "1");
    }
  }
  CHECK(seen);
  CHECK((b.code == kExitOk || b.code == kExitValidationFailure));
}

TEST_CASE("validate output is identical across worker counts") {
  const std::vector<std::string> base{"validate", "--h", "0.6", "--paths", "200",
                                      "--steps", "256", "--seed", "3"};
  auto one = base;
  one.insert(one.end(), {"--workers", "1"});
  auto three = base;
  three.insert(three.end(), {"--workers", "3"});
  CHECK(run(one).out == run(three).out);
}

TEST_CASE("process exit codes") {
  const std::string tool = FBMSUP_TOOL_PATH;
  const auto status = [&](const std::string& args) {
    const int s = std::system((tool + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  CHECK(status("bounds --h 0.5") == 0);
  CHECK(status("bounds --h-grid 0.1:0.5:0") == 64);
  CHECK(status("bounds --h 0.5 --out /nonexistent-dir/x.csv") == 2);
  CHECK(status("validate --h 0.5 --paths 2 --steps 4 --drift 1e-9") == 1);
}
