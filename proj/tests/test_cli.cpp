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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "cli_harness.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using cli::run;
using cli::scratch;
using cli::slurp;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

double parse_out(const cli::Result& r) { return std::stod(r.out); }

}  // namespace

TEST_CASE("simulate writes a path CSV and manifest", "[cli][simulate]") {
  const auto dir = scratch("simulate");
  const auto r = run("simulate --kind random-walk --step 0.0001 --days 1000 --seed 7 --out a", dir);
  REQUIRE(r.exit_code == 0);
  const auto rows = lines(slurp(dir / "a" / "path.csv"));
  CHECK(rows.size() == 1002);  // header + 1001 grid points
  CHECK(rows.front() == "t,value");
  CHECK(fs::exists(dir / "a" / "manifest.json"));

  REQUIRE(run("simulate --kind random-walk --step 0.0001 --days 1000 --seed 7 --out b", dir).exit_code == 0);
  CHECK(slurp(dir / "a" / "path.csv") == slurp(dir / "b" / "path.csv"));

  const auto manifest = nlohmann::json::parse(slurp(dir / "a" / "manifest.json"));
  CHECK(manifest["seed"] == 7);
  CHECK(manifest["subcommand"] == "simulate");
  CHECK(manifest.contains("version"));
  CHECK(manifest["config"]["n_steps"] == 1000);
}

TEST_CASE("simulate with zero volatility gives a constant column", "[cli][simulate]") {
  const auto dir = scratch("simulate_const");
  REQUIRE(run("simulate --kind shadow --sigma 0 --x0 1.5 --out o", dir).exit_code == 0);
  const auto rows = lines(slurp(dir / "o" / "path.csv"));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].substr(rows[i].find(',') + 1) == "1.5");
  }
}

TEST_CASE("invalid flags exit 2 naming the flag", "[cli][errors]") {
  const auto dir = scratch("errors");
  auto r = run("simulate --kind bounded --sigma -1", dir);
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("--sigma") != std::string::npos);
  r = run("simulate --kind bounded --y0 1.5", dir);
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("--y0") != std::string::npos);
  r = run("simulate --kind comet", dir);
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("--kind") != std::string::npos);
  r = run("simulate --kind brownian --bogus 3", dir);
  CHECK(r.exit_code == 2);
  r = run("price --pricer gaussian --y 0 --l 0 --sigma abc --tau 1", dir);
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("--sigma") != std::string::npos);
  r = run("", dir);
  CHECK(r.exit_code == 2);
}

TEST_CASE("price prints a 17-digit number", "[cli][price]") {
  const auto dir = scratch("price");
  auto r = run("price --pricer gaussian --y 0.5 --l 0.5 --mu 0 --sigma 1 --tau 0.5", dir);
  REQUIRE(r.exit_code == 0);
  CHECK(parse_out(r) == 0.5);
  r = run("price --pricer taleb --y 0.5 --l 0.5 --sigma 1 --tau 1", dir);
  REQUIRE(r.exit_code == 0);
  CHECK(parse_out(r) == 0.5);
  r = run("price --pricer gaussian --y 0 --l 1 --mu 0 --sigma 1000000 --tau 1", dir);
  REQUIRE(r.exit_code == 0);
  CHECK(std::abs(parse_out(r) - 0.5) < 1e-3);
  r = run("price --pricer taleb --y 0.6 --l 0.5 --sigma 100% --tau 0.25", dir);
  const auto r2 = run("price --pricer taleb --y 0.6 --l 0.5 --sigma 1.0 --tau 0.25", dir);
  CHECK(r.out == r2.out);
  r = run("price --pricer random-walk --y 0.51 --l 0.5 --step 1e-4 --days 100", dir);
  CHECK(std::abs(parse_out(r) - 1.0) < 1e-12);
  r = run("price --pricer maturity --y 0.5 --l 0.5", dir);
  CHECK(parse_out(r) == 0.5);
  r = run("price --pricer gaussian --y 0 --l 0 --sigma 1 --tau 0", dir);
  CHECK(r.exit_code == 2);
  CHECK(fs::is_empty(dir));  // nothing written without --out
}

TEST_CASE("brier subcommand", "[cli][brier]") {
  const auto dir = scratch("brier");
  auto r = run("brier --probs 0.8,0.3 --outcomes 1,0", dir);
  REQUIRE(r.exit_code == 0);
  CHECK(std::abs(parse_out(r) - 0.065) < 1e-15);
  r = run("brier --probs 0.8 --outcomes 1,0", dir);
  CHECK(r.exit_code == 2);
  r = run("brier --probs 0.8 --outcomes 2", dir);
  CHECK(r.exit_code == 2);
}

TEST_CASE("martingale subcommand", "[cli][martingale]") {
  const auto dir = scratch("martingale");
  const auto r = run("martingale --kind bounded --sigma 1 --y0 0.5 --l 0.5 --T 1 --s 0.25 "
                     "--t 0.5 --n-outer 20 --n-inner 10000 --seed 4 --out m",
                     dir);
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(slurp(dir / "m" / "martingale.json"));
  CHECK(j["reports"].size() == 20);
  CHECK(j["verdict"] == "pass");
  CHECK(j["reports"][0].contains("mean_b_t"));
  CHECK(run("martingale --kind bounded --s 0.5 --t 0.25", dir).exit_code == 2);
}

TEST_CASE("experiment subcommand", "[cli][experiment]") {
  const auto dir = scratch("experiment");
  auto r = run("experiment uniformity --n 100000 --seed 3 --out u", dir);
  CHECK(r.exit_code == 0);
  const auto report = nlohmann::json::parse(slurp(dir / "u" / "report.json"));
  CHECK(report["verdict"] == "pass");
  CHECK(report["report"]["n_samples"] == 100000);

  r = run("experiment sigma-invariance --sigmas 0.5,1,2,10 --out s", dir);
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir / "s" / "prices_sigma_3.csv"));

  r = run("experiment excess-volatility --ratios 1,2,5,10 --out e", dir);
  CHECK(r.exit_code == 0);
  CHECK(lines(slurp(dir / "e" / "excess_volatility.csv")).size() == 5);

  r = run("experiment nonsense", dir);
  CHECK(r.exit_code == 2);
  for (const char* id : {"uniformity", "sigma-invariance", "excess-volatility"}) {
    CHECK(r.err.find(id) != std::string::npos);
  }
  r = run("experiment uniformity --mu 1 --l 0.3 --n 100 --out bad", dir);
  CHECK(r.exit_code == 2);
}

TEST_CASE("experiment reads a config file", "[cli][experiment][config]") {
  const auto dir = scratch("experiment_config");
  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "experiment_id = uniformity\nmu = 2\nsigma = 30%\nn_paths = 20000\nseed = 9\n";
  }
  auto r = run("experiment uniformity --config run.cfg --out c", dir);
  CHECK(r.exit_code == 0);
  const auto manifest = nlohmann::json::parse(slurp(dir / "c" / "manifest.json"));
  CHECK(manifest["config"]["threshold"] == 2.0);
  CHECK(manifest["config"]["sigma"] == 0.3);
  CHECK(manifest["seed"] == 9);
  r = run("experiment uniformity --config missing.cfg", dir);
  CHECK(r.exit_code == 2);
}

TEST_CASE("threads do not change outputs", "[cli][threads]") {
  const auto dir = scratch("threads");
  REQUIRE(run("experiment uniformity --n 20000 --seed 5 --threads 1 --out one", dir).exit_code == 0);
  REQUIRE(run("experiment uniformity --n 20000 --seed 5 --threads 4 --out four", dir).exit_code == 0);
  CHECK(slurp(dir / "one" / "prices.csv") == slurp(dir / "four" / "prices.csv"));
  CHECK(slurp(dir / "one" / "report.json") == slurp(dir / "four" / "report.json"));
}

TEST_CASE("figure subcommand", "[cli][figure]") {
  const auto dir = scratch("figure");
  auto r = run("figure 1 --seed 11 --out f", dir);
  REQUIRE(r.exit_code == 0);
  CHECK(lines(r.out).size() == 2);
  const std::string svg = slurp(dir / "f" / "fig1.svg");
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(std::count(svg.begin(), svg.end(), '<') == std::count(svg.begin(), svg.end(), '>'));
  CHECK(svg.find("</svg>") != std::string::npos);

  REQUIRE(run("figure 2 --seed 11 --out f", dir).exit_code == 0);
  REQUIRE(run("price --pricer random-walk --step 0.0001 --l 0.5 --path f/fig1_path.csv --out rp", dir)
              .exit_code == 0);
  CHECK(slurp(dir / "rp" / "series.csv") == slurp(dir / "f" / "fig2_series.csv"));

  REQUIRE(run("figure 3 --seed 11 --out f", dir).exit_code == 0);
  const auto rows = lines(slurp(dir / "f" / "fig3_series.csv"));
  REQUIRE(rows.size() == 367);
  const double last = std::stod(rows.back().substr(rows.back().find(',') + 1));
  CHECK((last == 0.0 || last == 0.5 || last == 1.0));
  for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
    const double p = std::stod(rows[i].substr(rows[i].find(',') + 1));
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
  }

  CHECK(run("figure 4", dir).exit_code == 2);
}

TEST_CASE("replaying a manifest reproduces outputs byte for byte", "[cli][manifest]") {
  const auto dir = scratch("replay");
  REQUIRE(run("simulate --kind bounded --sigma 100% --steps 50 --seed 12 --out a", dir).exit_code == 0);
  REQUIRE(run("--replay a/manifest.json --out b", dir).exit_code == 0);
  CHECK(slurp(dir / "a" / "path.csv") == slurp(dir / "b" / "path.csv"));

  REQUIRE(run("experiment sigma-invariance --n 5000 --seed 8 --out c", dir).exit_code == 0);
  REQUIRE(run("--replay c/manifest.json --out d", dir).exit_code == 0);
  CHECK(slurp(dir / "c" / "report.json") == slurp(dir / "d" / "report.json"));
  CHECK(slurp(dir / "c" / "prices_sigma_0.csv") == slurp(dir / "d" / "prices_sigma_0.csv"));

  REQUIRE(run("figure 3 --seed 2 --out e", dir).exit_code == 0);
  REQUIRE(run("--replay e/manifest.json --out g", dir).exit_code == 0);
  CHECK(slurp(dir / "e" / "fig3_series.csv") == slurp(dir / "g" / "fig3_series.csv"));
  CHECK(slurp(dir / "e" / "fig3.svg") == slurp(dir / "g" / "fig3.svg"));

  CHECK(run("--replay nowhere.json", dir).exit_code == 2);
}

TEST_CASE("subcommands write only inside the output directory", "[cli][sandbox]") {
  const auto dir = scratch("confined");
  REQUIRE(run("figure 2 --seed 1 --out only", dir).exit_code == 0);
  REQUIRE(run("simulate --kind brownian --out only/sub", dir).exit_code == 0);
  std::vector<std::string> entries;
  for (const auto& e : fs::directory_iterator(dir)) entries.push_back(e.path().filename().string());
  CHECK(entries == std::vector<std::string>{"only"});
}
