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

// efmart command-line tool: simulate paths, quote binary prices, run the
// martingale check, score forecasts, run experiments and draw figures.
//
// Exit codes: 0 success / all verdicts pass, 1 statistical failure,
// 2 usage or configuration error, 3 I/O or internal error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "efmart.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitStatFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

#ifndef EFMART_VERSION
#define EFMART_VERSION "dev"
#endif

// Thrown for flag values that parse but make no sense; the message starts
// with the flag name.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "100%" -> "1", leaves plain numbers alone.
const CLI::Validator kPercent(
    [](std::string& value) -> std::string {
      if (!value.empty() && value.back() == '%') {
        try {
          value = efmart::format_double(efmart::parse_number(value));
        } catch (const std::exception&) {
          return "'" + value + "' is not a percentage";
        }
      }
      return {};
    },
    "NUMBER or PERCENT", "percent");

void write_file(const fs::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << text;
}

struct Common {
  std::string out = "out";
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

// Everything needed to replay a run: the subcommand and its arguments
// without --out/--threads (which do not change results).
struct Invocation {
  std::string subcommand;
  std::vector<std::string> args;
};

std::vector<std::string> replayable_args(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--out" || a == "--threads") {
      ++i;
      continue;
    }
    if (a.rfind("--out=", 0) == 0 || a.rfind("--threads=", 0) == 0) continue;
    out.push_back(a);
  }
  return out;
}

void write_manifest(const fs::path& dir, const Invocation& inv, std::uint64_t seed,
                    const json& config) {
  json manifest = {{"tool", "efmart"},
                   {"version", EFMART_VERSION},
                   {"subcommand", inv.subcommand},
                   {"args", replayable_args(inv.args)},
                   {"seed", seed},
                   {"config", config}};
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

json spec_json(const efmart::ProcessSpec& spec) {
  return {{"kind", std::string(efmart::to_string(spec.kind))},
          {"mu", spec.mu},
          {"sigma", spec.sigma},
          {"y0", spec.y0},
          {"step", spec.step},
          {"threshold", spec.threshold},
          {"t0", spec.horizon.t0()},
          {"T", spec.horizon.T()},
          {"n_steps", spec.horizon.n_steps()}};
}

// ---------------------------------------------------------------------------
// Process flags shared by simulate and martingale.
// ---------------------------------------------------------------------------

struct ProcessFlags {
  std::string kind;
  double mu = 0.0;
  double sigma = 1.0;
  double y0 = 0.0;
  double threshold = 0.0;
  double step = efmart::kDefaultWalkStep;
  std::size_t days = 1000;
  double t0 = 0.0;
  double T = 1.0;
  std::size_t steps = 365;
  CLI::Option* y0_opt = nullptr;
  CLI::Option* threshold_opt = nullptr;
  CLI::Option* T_opt = nullptr;
  CLI::Option* steps_opt = nullptr;
};

void add_process_flags(CLI::App* cmd, ProcessFlags& f) {
  cmd->add_option("--kind", f.kind, "brownian | random-walk | shadow | bounded")->required();
  cmd->add_option("--mu", f.mu, "drift per year (brownian)");
  cmd->add_option("--sigma", f.sigma, "volatility per sqrt(year); '100%' accepted")
      ->transform(kPercent);
  f.y0_opt = cmd->add_option("--y0,--x0", f.y0, "initial value");
  f.threshold_opt = cmd->add_option("--l,--threshold", f.threshold, "threshold level");
  cmd->add_option("--step", f.step, "daily random-walk move (default 0.0001; 0.001 also used)")
      ->transform(kPercent);
  cmd->add_option("--days", f.days, "random-walk horizon in days");
  cmd->add_option("--t0", f.t0, "start time in years");
  f.T_opt = cmd->add_option("--T", f.T, "horizon in years");
  f.steps_opt = cmd->add_option("--steps", f.steps, "number of grid steps");
}

efmart::ProcessSpec build_spec(const ProcessFlags& f) {
  const auto kind = efmart::parse_process_kind(f.kind);
  if (!kind) {
    throw UsageError("--kind: unknown process '" + f.kind +
                     "' (expected brownian, random-walk, shadow or bounded)");
  }
  if (!(f.sigma >= 0.0)) throw UsageError("--sigma: must be >= 0");
  const bool unit = *kind == efmart::ProcessKind::RandomWalk ||
                    *kind == efmart::ProcessKind::BoundedY;
  const double y0 = f.y0_opt->count() ? f.y0 : (unit ? 0.5 : 0.0);
  const double l = f.threshold_opt->count() ? f.threshold : (unit ? 0.5 : 0.0);
  if (unit && !(y0 > 0.0 && y0 < 1.0)) throw UsageError("--y0: must lie in (0, 1)");
  if (unit && !(l > 0.0 && l < 1.0)) throw UsageError("--l: must lie in (0, 1)");

  if (*kind == efmart::ProcessKind::RandomWalk) {
    if (f.days < 1) throw UsageError("--days: must be >= 1");
    if (!(f.step >= 0.0 && f.step < 0.5)) throw UsageError("--step: must lie in [0, 0.5)");
    return efmart::ProcessSpec::random_walk(f.step, y0, l, f.days);
  }
  if (!(f.T > f.t0)) throw UsageError("--T: must exceed --t0");
  if (f.steps < 1) throw UsageError("--steps: must be >= 1");
  const efmart::TimeGrid grid(f.t0, f.T, f.steps);
  switch (*kind) {
    case efmart::ProcessKind::BrownianDrift:
      return efmart::ProcessSpec::brownian_drift(f.mu, f.sigma, y0, l, grid);
    case efmart::ProcessKind::ShadowX:
      return efmart::ProcessSpec::shadow(f.sigma, y0, l, grid);
    default:
      return efmart::ProcessSpec::bounded(f.sigma, y0, l, grid);
  }
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateFlags {
  ProcessFlags process;
  std::uint64_t index = 0;
};

int cmd_simulate(const SimulateFlags& f, const Common& common, const Invocation& inv) {
  const efmart::ProcessSpec spec = build_spec(f.process);
  const efmart::Path path = efmart::simulate(spec, common.seed, f.index);
  const fs::path dir(common.out);
  fs::create_directories(dir);
  std::ostringstream csv;
  efmart::write_path_csv(csv, path);
  write_file(dir / "path.csv", csv.str());
  json config = spec_json(spec);
  config["path_index"] = f.index;
  config["clamp_events"] = path.clamp_events;
  write_manifest(dir, inv, common.seed, config);
  if (path.clamp_events > 0) {
    std::cerr << "warning: random walk clamped " << path.clamp_events << " time(s)\n";
  }
  std::cout << (dir / "path.csv").string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// price
// ---------------------------------------------------------------------------

struct PriceFlags {
  std::string pricer;
  double y = 0.0;
  double l = 0.0;
  double mu = 0.0;
  double sigma = 1.0;
  double step = efmart::kDefaultWalkStep;
  std::optional<double> tau;
  double t = 0.0;
  std::optional<double> T;
  std::optional<long long> days;
  std::string path_csv;
  CLI::Option* out_opt = nullptr;
};

int cmd_price(const PriceFlags& f, const Common& common, const Invocation& inv) {
  using namespace efmart;
  std::optional<AnyPricer> pricer;
  ProcessKind kind = ProcessKind::BrownianDrift;
  if (f.pricer == "gaussian") {
    pricer = GaussianPricer{f.mu, f.sigma, f.l};
  } else if (f.pricer == "taleb") {
    pricer = TalebPricer{f.sigma, f.l};
    kind = ProcessKind::BoundedY;
  } else if (f.pricer == "shadow") {
    pricer = ShadowPricer{f.sigma, f.l};
    kind = ProcessKind::ShadowX;
  } else if (f.pricer == "random-walk") {
    pricer = RandomWalkPricer{f.step, f.l};
    kind = ProcessKind::RandomWalk;
  } else if (f.pricer != "maturity") {
    throw UsageError("--pricer: unknown pricer '" + f.pricer +
                     "' (expected gaussian, taleb, shadow, random-walk or maturity)");
  }

  json config = {{"pricer", f.pricer}, {"l", f.l}, {"mu", f.mu}, {"sigma", f.sigma},
                 {"step", f.step}};

  if (!f.path_csv.empty()) {
    if (!pricer) throw UsageError("--path: the maturity pricer has no series form");
    std::ifstream in(f.path_csv, std::ios::binary);
    if (!in) throw UsageError("--path: cannot open '" + f.path_csv + "'");
    const Path path = read_path_csv(in, kind);
    const ForecastSeries series = forecast_series(path, *pricer);
    const fs::path dir(common.out);
    fs::create_directories(dir);
    std::ostringstream csv;
    write_series_csv(csv, series);
    write_file(dir / "series.csv", csv.str());
    config["path"] = f.path_csv;
    write_manifest(dir, inv, common.seed, config);
    std::cout << (dir / "series.csv").string() << "\n";
    return kExitOk;
  }

  double price = 0.0;
  if (f.pricer == "maturity") {
    price = maturity_value(f.y, f.l);
  } else if (f.pricer == "random-walk") {
    if (!f.days) throw UsageError("--days: required for the random-walk pricer");
    if (*f.days < 1) throw UsageError("--days: must be >= 1");
    if (!(f.step > 0.0)) throw UsageError("--step: must be positive");
    price = binary_price_random_walk(f.y, *f.days, f.step, f.l);
  } else {
    if (!(f.sigma > 0.0)) throw UsageError("--sigma: must be positive");
    const double T = f.T ? *f.T : f.t + f.tau.value_or(0.0);
    if (!f.tau && !f.T) throw UsageError("--tau: give --tau or --T");
    if (!(T > f.t)) throw UsageError("--tau: time to expiry must be positive");
    if (f.pricer == "taleb") {
      if (!(f.y > 0.0 && f.y < 1.0)) throw UsageError("--y: must lie in (0, 1)");
      if (!(f.l > 0.0 && f.l < 1.0)) throw UsageError("--l: must lie in (0, 1)");
    }
    price = std::visit([&](const auto& p) { return p(f.y, f.t, T); }, *pricer);
  }
  std::cout << format_double(price) << "\n";
  if (f.out_opt->count()) {
    const fs::path dir(common.out);
    fs::create_directories(dir);
    config["y"] = f.y;
    config["price"] = price;
    write_manifest(dir, inv, common.seed, config);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// martingale
// ---------------------------------------------------------------------------

struct MartingaleFlags {
  ProcessFlags process;
  double s = 0.25;
  double t = 0.5;
  std::size_t n_outer = 20;
  std::size_t n_inner = 10000;
};

int cmd_martingale(const MartingaleFlags& f, const Common& common, const Invocation& inv) {
  const efmart::ProcessSpec spec = build_spec(f.process);
  if (!(f.s < f.t)) throw UsageError("--s: must be below --t");
  if (!(f.t < spec.horizon.T())) throw UsageError("--t: must be below the horizon --T");
  if (f.s < spec.horizon.t0()) throw UsageError("--s: must be >= --t0");
  if (f.n_inner < efmart::kMinInnerPaths) throw UsageError("--n-inner: must be >= 1000");
  if (f.n_outer < 1) throw UsageError("--n-outer: must be >= 1");
  if (spec.kind != efmart::ProcessKind::RandomWalk && !(spec.sigma > 0.0)) {
    throw UsageError("--sigma: the pricer needs a positive volatility");
  }
  const auto reports = efmart::check_martingale(spec, efmart::true_pricer(spec), f.s, f.t,
                                                f.n_outer, f.n_inner, common.seed,
                                                common.threads);
  std::size_t passed = 0;
  for (const auto& r : reports) passed += r.pass ? 1 : 0;
  const bool ok = efmart::martingale_holds(reports);
  json out = {{"reports", reports},
              {"passed", passed},
              {"n_outer", reports.size()},
              {"verdict", ok ? "pass" : "fail"}};
  const fs::path dir(common.out);
  fs::create_directories(dir);
  write_file(dir / "martingale.json", out.dump(2) + "\n");
  json config = spec_json(spec);
  config.update({{"s", f.s}, {"t", f.t}, {"n_outer", f.n_outer}, {"n_inner", f.n_inner},
                 {"pricer", std::string(efmart::pricer_id(efmart::true_pricer(spec)))}});
  write_manifest(dir, inv, common.seed, config);
  std::cout << passed << "/" << reports.size() << " outer paths pass; verdict "
            << (ok ? "pass" : "fail") << "\n";
  return ok ? kExitOk : kExitStatFail;
}

// ---------------------------------------------------------------------------
// brier
// ---------------------------------------------------------------------------

struct BrierFlags {
  std::string probs;
  std::string outcomes;
  CLI::Option* out_opt = nullptr;
};

int cmd_brier(const BrierFlags& f, const Common& common, const Invocation& inv) {
  std::vector<double> probs;
  std::vector<int> outcomes;
  try {
    probs = efmart::parse_number_list(f.probs);
  } catch (const efmart::SpecError& e) {
    throw UsageError(std::string("--probs: ") + e.what());
  }
  try {
    for (double o : efmart::parse_number_list(f.outcomes)) {
      if (o != 0.0 && o != 1.0) throw UsageError("--outcomes: values must be 0 or 1");
      outcomes.push_back(static_cast<int>(o));
    }
  } catch (const efmart::SpecError& e) {
    throw UsageError(std::string("--outcomes: ") + e.what());
  }
  if (probs.size() != outcomes.size()) {
    throw UsageError("--outcomes: length differs from --probs");
  }
  if (probs.empty()) throw UsageError("--probs: empty");
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw UsageError("--probs: values must lie in [0, 1]");
  }
  const double score = efmart::brier_score(probs, outcomes);
  std::cout << efmart::format_double(score) << "\n";
  if (f.out_opt->count()) {
    const fs::path dir(common.out);
    fs::create_directories(dir);
    write_file(dir / "brier.json",
               json{{"n", probs.size()}, {"brier_score", score}}.dump(2) + "\n");
    write_manifest(dir, inv, common.seed, {{"probs", probs}, {"outcomes", outcomes}});
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// experiment
// ---------------------------------------------------------------------------

struct ExperimentFlags {
  std::string id;
  std::string config_file;
  std::string n, mu, sigma, T, steps, alpha, sigmas, ratios, kind, y0, l;
  CLI::Option* seed_opt = nullptr;
};

int cmd_experiment(const ExperimentFlags& f, const Common& common, const Invocation& inv) {
  if (!efmart::is_registered_experiment(f.id)) {
    throw UsageError("experiment: unknown id '" + f.id +
                     "'; registered ids: " + efmart::registered_experiments_text());
  }
  std::map<std::string, std::string> kv;
  if (!f.config_file.empty()) {
    std::ifstream in(f.config_file);
    if (!in) throw UsageError("--config: cannot open '" + f.config_file + "'");
    try {
      kv = efmart::parse_key_values(in);
    } catch (const efmart::SpecError& e) {
      throw UsageError(std::string("--config: ") + e.what());
    }
    if (kv.count("experiment_id") && kv["experiment_id"] != f.id) {
      throw UsageError("--config: experiment_id '" + kv["experiment_id"] +
                       "' does not match '" + f.id + "'");
    }
  }
  kv["experiment_id"] = f.id;
  auto set = [&](const char* key, const std::string& value) {
    if (!value.empty()) kv[key] = value;
  };
  set("n_paths", f.n);
  set("mu", f.mu);
  set("sigma", f.sigma);
  set("T", f.T);
  set("n_steps", f.steps);
  set("alpha", f.alpha);
  set("sigmas", f.sigmas);
  set("ratios", f.ratios);
  set("kind", f.kind);
  set("y0", f.y0);
  set("threshold", f.l);
  if (f.seed_opt->count() || !kv.count("seed")) kv["seed"] = std::to_string(common.seed);
  kv.erase("output_dir");
  kv.erase("threads");

  efmart::ExperimentConfig config;
  try {
    config = efmart::config_from_key_values(kv);
  } catch (const efmart::SpecError& e) {
    throw UsageError(std::string("--config: ") + e.what());
  }
  config.output_dir = common.out;
  config.threads = common.threads;

  const fs::path dir(common.out);
  fs::create_directories(dir);
  json report;
  bool ok = false;
  try {
    if (f.id == "uniformity") {
      const auto prices = efmart::midpoint_prices(config);
      const auto r = efmart::uniformity_report(prices, config.alpha);
      report = {{"experiment", f.id}, {"report", r}};
      ok = r.pass;
      std::ostringstream csv;
      csv << "index,price\n";
      for (std::size_t i = 0; i < prices.size(); ++i) {
        csv << i << ',' << efmart::format_double(prices[i]) << '\n';
      }
      write_file(dir / "prices.csv", csv.str());
    } else if (f.id == "sigma-invariance") {
      const auto r = efmart::run_sigma_invariance(config, config.sigmas);
      report = {{"experiment", f.id},
                {"sigmas", r.sigmas},
                {"per_sigma", r.per_sigma},
                {"pairwise", r.pairwise}};
      ok = r.pass();
      for (std::size_t i = 0; i < r.samples.size(); ++i) {
        std::ostringstream csv;
        csv << "index,price\n";
        for (std::size_t k = 0; k < r.samples[i].size(); ++k) {
          csv << k << ',' << efmart::format_double(r.samples[i][k]) << '\n';
        }
        write_file(dir / ("prices_sigma_" + std::to_string(i) + ".csv"), csv.str());
      }
    } else {
      const auto r = efmart::run_excess_volatility(config, config.ratios);
      json rows = json::array();
      std::ostringstream csv;
      csv << "ratio,mean_abs_deviation\n";
      for (const auto& row : r.rows) {
        rows.push_back({{"ratio", row.ratio}, {"mean_abs_deviation", row.mean_abs_deviation}});
        csv << efmart::format_double(row.ratio) << ','
            << efmart::format_double(row.mean_abs_deviation) << '\n';
      }
      write_file(dir / "excess_volatility.csv", csv.str());
      report = {{"experiment", f.id}, {"rows", rows}, {"monotone", r.monotone}};
      ok = r.monotone;
    }
  } catch (const efmart::SpecError& e) {
    throw UsageError(std::string("experiment ") + f.id + ": " + e.what());
  }
  report["verdict"] = ok ? "pass" : "fail";
  write_file(dir / "report.json", report.dump(2) + "\n");

  json cfg = spec_json(config.spec);
  cfg.update({{"experiment_id", config.experiment_id},
              {"n_paths", config.n_paths},
              {"alpha", config.alpha},
              {"sigmas", config.sigmas},
              {"ratios", config.ratios}});
  write_manifest(dir, inv, config.seed, cfg);
  std::cout << f.id << ": " << (ok ? "pass" : "fail") << "\n";
  return ok ? kExitOk : kExitStatFail;
}

// ---------------------------------------------------------------------------
// figure
// ---------------------------------------------------------------------------

struct FigureFlags {
  int fig_id = 0;
  efmart::FigureOptions options;
};

int cmd_figure(const FigureFlags& f, const Common& common, const Invocation& inv) {
  if (f.fig_id < 1 || f.fig_id > 3) throw UsageError("figure: id must be 1, 2 or 3");
  efmart::FigureResult fig;
  try {
    fig = efmart::reproduce_figure(f.fig_id, common.seed, f.options);
  } catch (const efmart::SpecError& e) {
    throw UsageError(std::string("figure: ") + e.what());
  }
  const auto files = efmart::write_figure(fig, common.out);
  const auto& o = f.options;
  write_manifest(common.out, inv, common.seed,
                 {{"figure", f.fig_id},
                  {"walk_step", o.walk_step},
                  {"walk_days", o.walk_days},
                  {"y0", o.y0},
                  {"threshold", o.threshold},
                  {"taleb_sigma", o.taleb_sigma},
                  {"taleb_T", o.taleb_T},
                  {"taleb_steps", o.taleb_steps}});
  for (const auto& file : files) std::cout << file.string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

int run(const std::vector<std::string>& raw_args) {
  CLI::App app{"Election forecasts as binary options: simulation, pricing and checks", "efmart"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(EFMART_VERSION));

  Common common;
  auto add_common = [&](CLI::App* cmd) {
    CLI::Option* out = cmd->add_option("--out", common.out, "output directory");
    cmd->add_option("--seed", common.seed, "64-bit master seed");
    cmd->add_option("--threads", common.threads, "worker threads (results do not depend on it)")
        ->check(CLI::PositiveNumber);
    return out;
  };

  SimulateFlags sim;
  auto* simulate = app.add_subcommand("simulate", "simulate one path to <out>/path.csv");
  add_process_flags(simulate, sim.process);
  simulate->add_option("--index", sim.index, "path index (substream id)");
  add_common(simulate);

  PriceFlags pf;
  auto* price = app.add_subcommand("price", "quote a binary price, or price a path CSV");
  price->add_option("--pricer", pf.pricer, "gaussian | taleb | shadow | random-walk | maturity")
      ->required();
  price->add_option("--y", pf.y, "current value of the underlying");
  price->add_option("--l,--threshold", pf.l, "threshold");
  price->add_option("--mu", pf.mu, "drift per year (gaussian)");
  price->add_option("--sigma", pf.sigma, "volatility; '100%' accepted")->transform(kPercent);
  price->add_option("--step", pf.step, "random-walk daily move")->transform(kPercent);
  price->add_option("--tau", pf.tau, "time to expiry in years");
  price->add_option("--t", pf.t, "current time in years");
  price->add_option("--T", pf.T, "expiry in years");
  price->add_option("--days", pf.days, "days remaining (random-walk)");
  price->add_option("--path", pf.path_csv, "price every point of a t,value CSV");
  pf.out_opt = add_common(price);

  MartingaleFlags mf;
  auto* martingale = app.add_subcommand("martingale", "nested Monte Carlo tower-property check");
  add_process_flags(martingale, mf.process);
  martingale->add_option("--s", mf.s, "conditioning time");
  martingale->add_option("--t", mf.t, "later time");
  martingale->add_option("--n-outer", mf.n_outer, "outer paths");
  martingale->add_option("--n-inner", mf.n_inner, "continuations per outer path");
  add_common(martingale);

  BrierFlags bf;
  auto* brier = app.add_subcommand("brier", "Brier score of forecasts against outcomes");
  brier->add_option("--probs", bf.probs, "comma-separated probabilities")->required();
  brier->add_option("--outcomes", bf.outcomes, "comma-separated 0/1 outcomes")->required();
  bf.out_opt = add_common(brier);

  ExperimentFlags ef;
  auto* experiment = app.add_subcommand("experiment", "run a registered experiment");
  experiment->add_option("id", ef.id, efmart::registered_experiments_text())->required();
  experiment->add_option("--config", ef.config_file, "key = value config file");
  experiment->add_option("--n", ef.n, "number of paths");
  experiment->add_option("--kind", ef.kind, "process kind");
  experiment->add_option("--mu", ef.mu, "drift");
  experiment->add_option("--sigma", ef.sigma, "volatility")->transform(kPercent);
  experiment->add_option("--y0", ef.y0, "initial value");
  experiment->add_option("--l,--threshold", ef.l, "threshold (default mu*T)");
  experiment->add_option("--T", ef.T, "horizon in years");
  experiment->add_option("--steps", ef.steps, "grid steps");
  experiment->add_option("--alpha", ef.alpha, "KS significance level");
  experiment->add_option("--sigmas", ef.sigmas, "comma-separated sigmas (sigma-invariance)");
  experiment->add_option("--ratios", ef.ratios, "comma-separated implied/realized ratios");
  add_common(experiment);
  ef.seed_opt = experiment->get_option("--seed");

  FigureFlags ff;
  auto* figure = app.add_subcommand("figure", "regenerate figure 1, 2 or 3 as CSV + SVG");
  figure->add_option("id", ff.fig_id, "1, 2 or 3")->required();
  figure->add_option("--step", ff.options.walk_step, "random-walk daily move (figures 1-2)")
      ->transform(kPercent)
      ->check(CLI::PositiveNumber);
  figure->add_option("--days", ff.options.walk_days, "random-walk days (figures 1-2)");
  figure->add_option("--sigma", ff.options.taleb_sigma, "volatility s (figure 3)")
      ->transform(kPercent)
      ->check(CLI::PositiveNumber);
  figure->add_option("--T", ff.options.taleb_T, "horizon in years (figure 3)");
  figure->add_option("--steps", ff.options.taleb_steps, "grid steps (figure 3)");
  add_common(figure);

  std::vector<std::string> args(raw_args.rbegin(), raw_args.rend());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Invocation inv;
  inv.subcommand = app.get_subcommands().front()->get_name();
  inv.args.assign(raw_args.begin() + 1, raw_args.end());

  try {
    if (*simulate) return cmd_simulate(sim, common, inv);
    if (*price) return cmd_price(pf, common, inv);
    if (*martingale) return cmd_martingale(mf, common, inv);
    if (*brier) return cmd_brier(bf, common, inv);
    if (*experiment) return cmd_experiment(ef, common, inv);
    if (*figure) return cmd_figure(ff, common, inv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const efmart::SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const efmart::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

// efmart --replay MANIFEST [--out DIR]
int replay(const std::vector<std::string>& args) {
  std::string manifest_file;
  std::optional<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--replay" && i + 1 < args.size()) manifest_file = args[++i];
    else if (args[i] == "--out" && i + 1 < args.size()) out = args[++i];
    else {
      std::cerr << "error: --replay accepts only --out\n";
      return kExitUsage;
    }
  }
  std::ifstream in(manifest_file);
  if (!in) {
    std::cerr << "error: --replay: cannot open '" << manifest_file << "'\n";
    return kExitUsage;
  }
  json manifest;
  try {
    manifest = json::parse(in);
  } catch (const json::exception& e) {
    std::cerr << "error: --replay: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!manifest.contains("subcommand") || !manifest.contains("args")) {
    std::cerr << "error: --replay: manifest lacks subcommand/args\n";
    return kExitUsage;
  }
  std::vector<std::string> argv = {manifest["subcommand"].get<std::string>()};
  for (const auto& a : manifest["args"]) argv.push_back(a.get<std::string>());
  if (out) {
    argv.push_back("--out");
    argv.push_back(*out);
  }
  return run(argv);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (!args.empty() && args.front() == "--replay") return replay(args);
  return run(args);
}
