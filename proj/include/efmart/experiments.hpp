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

#ifndef EFMART_EXPERIMENTS_HPP_
#define EFMART_EXPERIMENTS_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "efmart/errors.hpp"
#include "efmart/forecast.hpp"
#include "efmart/io.hpp"
#include "efmart/ks.hpp"
#include "efmart/parallel.hpp"
#include "efmart/pricing.hpp"
#include "efmart/process.hpp"
#include "efmart/rng.hpp"
#include "efmart/sde.hpp"
#include "efmart/svg.hpp"

#include "json.hpp"

namespace efmart {

inline constexpr std::array<std::string_view, 3> kExperimentIds = {
    "uniformity", "sigma-invariance", "excess-volatility"};

inline bool is_registered_experiment(std::string_view id) {
  return std::find(kExperimentIds.begin(), kExperimentIds.end(), id) != kExperimentIds.end();
}

inline std::string registered_experiments_text() {
  std::string out;
  for (auto id : kExperimentIds) {
    if (!out.empty()) out += ", ";
    out += id;
  }
  return out;
}

struct ExperimentConfig {
  std::string experiment_id = "uniformity";
  ProcessSpec spec = ProcessSpec::brownian_drift(0.0, 1.0, 0.0, 0.0, TimeGrid(0.0, 1.0, 2));
  std::string pricer_id = "gaussian";
  std::size_t n_paths = 100000;
  std::uint64_t seed = 1;
  std::string output_dir = "out";
  double alpha = 0.01;
  std::vector<double> sigmas{0.5, 1.0, 2.0, 10.0};
  std::vector<double> ratios{1.0, 2.0, 5.0, 10.0};
  unsigned threads = 1;
};

/// Defaults for a registered experiment. The excess-volatility default is
/// the bounded model at s = 100% on a one-year daily grid.
inline ExperimentConfig default_config(std::string_view experiment_id) {
  if (!is_registered_experiment(experiment_id)) {
    throw SpecError("unknown experiment '" + std::string(experiment_id) +
                    "'; registered: " + registered_experiments_text());
  }
  ExperimentConfig config;
  config.experiment_id = std::string(experiment_id);
  if (experiment_id == "sigma-invariance") {
    config.n_paths = 10000;
  } else if (experiment_id == "excess-volatility") {
    config.spec = ProcessSpec::bounded(1.0, 0.5, 0.5, TimeGrid(0.0, 1.0, 365));
    config.pricer_id = "taleb";
    config.n_paths = 200;
  }
  return config;
}

/// Applies `key = value` settings on top of default_config(experiment_id).
/// For the uniformity-style experiments an absent threshold defaults to
/// mu * T, which is their premise.
inline ExperimentConfig config_from_key_values(const std::map<std::string, std::string>& kv) {
  auto get = [&](const char* key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };
  ExperimentConfig config = default_config(get("experiment_id").value_or("uniformity"));

  static const std::array<std::string_view, 18> known = {
      "experiment_id", "kind",    "mu",     "sigma",  "y0",     "threshold",
      "l",             "T",       "t0",     "n_steps", "step",  "n_paths",
      "seed",          "output_dir", "pricer_id", "alpha", "sigmas", "ratios"};
  for (const auto& [key, value] : kv) {
    if (key == "threads") continue;
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw SpecError("config: unknown key '" + key + "'");
    }
  }

  ProcessSpec& spec = config.spec;
  if (auto v = get("kind")) {
    auto kind = parse_process_kind(*v);
    if (!kind) throw SpecError("config: unknown kind '" + *v + "'");
    spec.kind = *kind;
  }
  if (auto v = get("mu")) spec.mu = parse_number(*v);
  if (auto v = get("sigma")) spec.sigma = parse_number(*v);
  if (auto v = get("y0")) spec.y0 = parse_number(*v);
  if (auto v = get("step")) spec.step = parse_number(*v);
  double t0 = spec.horizon.t0();
  double T = spec.horizon.T();
  std::size_t n_steps = spec.horizon.n_steps();
  if (auto v = get("t0")) t0 = parse_number(*v);
  if (auto v = get("T")) T = parse_number(*v);
  if (auto v = get("n_steps")) n_steps = static_cast<std::size_t>(parse_number(*v));
  spec.horizon = TimeGrid(t0, T, n_steps);
  auto threshold = get("threshold");
  if (!threshold) threshold = get("l");
  if (threshold) {
    spec.threshold = parse_number(*threshold);
  } else if (config.experiment_id != "excess-volatility") {
    spec.threshold = spec.mu * T;
  }
  if (auto v = get("n_paths")) config.n_paths = static_cast<std::size_t>(parse_number(*v));
  if (auto v = get("seed")) config.seed = std::stoull(*v);
  if (auto v = get("output_dir")) config.output_dir = *v;
  if (auto v = get("pricer_id")) config.pricer_id = *v;
  if (auto v = get("alpha")) config.alpha = parse_number(*v);
  if (auto v = get("sigmas")) config.sigmas = parse_number_list(*v);
  if (auto v = get("ratios")) config.ratios = parse_number_list(*v);
  if (config.n_paths < 1) throw SpecError("config: n_paths must be >= 1");
  spec.validate();
  return config;
}

// ---------------------------------------------------------------------------
// Distribution comparisons
// ---------------------------------------------------------------------------

struct DistributionReport {
  std::size_t n_samples = 0;
  double ks_statistic = 0.0;
  double alpha = 0.01;
  double critical_value = 0.0;
  bool pass = false;
  std::string reference;
};

inline void to_json(nlohmann::json& j, const DistributionReport& r) {
  j = nlohmann::json{{"n_samples", r.n_samples},
                     {"ks_statistic", r.ks_statistic},
                     {"alpha", r.alpha},
                     {"critical_value", r.critical_value},
                     {"verdict", r.pass ? "pass" : "fail"},
                     {"reference", r.reference}};
}

struct TwoSampleReport {
  double sigma_a = 0.0;
  double sigma_b = 0.0;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  double ks_statistic = 0.0;
  double critical_value = 0.0;
  bool pass = false;
};

inline void to_json(nlohmann::json& j, const TwoSampleReport& r) {
  j = nlohmann::json{{"sigma_a", r.sigma_a},
                     {"sigma_b", r.sigma_b},
                     {"n_a", r.n_a},
                     {"n_b", r.n_b},
                     {"ks_statistic", r.ks_statistic},
                     {"critical_value", r.critical_value},
                     {"verdict", r.pass ? "pass" : "fail"}};
}

inline DistributionReport uniformity_report(std::span<const double> prices, double alpha) {
  DistributionReport r;
  r.n_samples = prices.size();
  r.ks_statistic = ks_statistic_uniform(prices);
  r.alpha = alpha;
  r.critical_value = ks_critical_value(alpha, prices.size());
  r.pass = r.ks_statistic < r.critical_value;
  r.reference = "uniform[0,1]";
  return r;
}

/// Throws unless the config describes Brownian drift from Y_0 = 0 with
/// l = mu T on a grid that contains T/2.
inline void require_uniformity_premise(const ExperimentConfig& config) {
  const ProcessSpec& spec = config.spec;
  spec.validate();
  if (spec.kind != ProcessKind::BrownianDrift) {
    throw SpecError("uniformity premise: kind must be brownian");
  }
  if (spec.y0 != 0.0) throw SpecError("uniformity premise: y0 must be 0");
  if (spec.horizon.t0() != 0.0) throw SpecError("uniformity premise: t0 must be 0");
  if (spec.horizon.n_steps() % 2 != 0) {
    throw SpecError("uniformity premise: n_steps must be even so T/2 is a grid point");
  }
  const double target = spec.mu * spec.horizon.T();
  if (std::abs(spec.threshold - target) > 1e-12 * std::max(1.0, std::abs(target))) {
    throw SpecError("uniformity premise: threshold must equal mu * T");
  }
  if (!(spec.sigma > 0.0)) throw SpecError("uniformity premise: sigma must be positive");
  if (config.n_paths < 1) throw SpecError("uniformity premise: n_paths must be >= 1");
}

/// B(T/2, T) on n_paths independent Brownian-drift paths (path i uses
/// stream (seed, i)).
inline std::vector<double> midpoint_prices(const ExperimentConfig& config) {
  require_uniformity_premise(config);
  const ProcessSpec& spec = config.spec;
  const std::size_t mid = spec.horizon.n_steps() / 2;
  const double t_mid = spec.horizon[mid];
  const double T = spec.horizon.T();
  const GaussianPricer pricer{spec.mu, spec.sigma, spec.threshold};
  std::vector<double> prices(config.n_paths);
  parallel_for(config.n_paths, config.threads, [&](std::size_t i) {
    const Path path = simulate_brownian_drift(spec, config.seed, i);
    prices[i] = pricer(path.values[mid], t_mid, T);
  });
  return prices;
}

inline DistributionReport run_uniformity(const ExperimentConfig& config) {
  return uniformity_report(midpoint_prices(config), config.alpha);
}

struct SigmaInvarianceResult {
  std::vector<double> sigmas;
  std::vector<std::vector<double>> samples;
  std::vector<DistributionReport> per_sigma;
  std::vector<TwoSampleReport> pairwise;

  bool pass() const {
    return std::all_of(pairwise.begin(), pairwise.end(), [](const auto& r) { return r.pass; });
  }
};

/// Price samples at T/2 for each sigma (sample i uses seed
/// derive_seed(config.seed, i)), each tested against Uniform[0,1], plus all
/// pairwise two-sample KS tests.
inline SigmaInvarianceResult run_sigma_invariance(const ExperimentConfig& config,
                                                  std::span<const double> sigmas) {
  if (sigmas.size() < 2) throw SpecError("sigma-invariance: needs at least two sigmas");
  require_uniformity_premise(config);
  SigmaInvarianceResult result;
  result.sigmas.assign(sigmas.begin(), sigmas.end());
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    ExperimentConfig run = config;
    run.spec.sigma = sigmas[i];
    run.seed = derive_seed(config.seed, i);
    result.samples.push_back(midpoint_prices(run));
    result.per_sigma.push_back(uniformity_report(result.samples.back(), config.alpha));
  }
  for (std::size_t a = 0; a < sigmas.size(); ++a) {
    for (std::size_t b = a + 1; b < sigmas.size(); ++b) {
      TwoSampleReport r;
      r.sigma_a = sigmas[a];
      r.sigma_b = sigmas[b];
      r.n_a = result.samples[a].size();
      r.n_b = result.samples[b].size();
      r.ks_statistic = ks_statistic_two_sample(result.samples[a], result.samples[b]);
      r.critical_value = ks_critical_value(config.alpha, r.n_a, r.n_b);
      r.pass = r.ks_statistic < r.critical_value;
      result.pairwise.push_back(r);
    }
  }
  return result;
}

struct ExcessVolatilityRow {
  double ratio = 1.0;
  double mean_abs_deviation = 0.0;
};

struct ExcessVolatilityResult {
  std::vector<ExcessVolatilityRow> rows;
  /// Strictly decreasing in ratio.
  bool monotone = false;
};

/// Simulates at the realized volatility, quotes with implied = ratio x
/// realized, and averages |B(t_k, T) - 1/2| over paths and pre-expiry grid
/// points. All ratios share the same paths.
inline ExcessVolatilityResult run_excess_volatility(const ExperimentConfig& config,
                                                    std::span<const double> ratios) {
  if (ratios.empty()) throw SpecError("excess-volatility: ratios must not be empty");
  for (double r : ratios) {
    if (!(r >= 1.0) || !std::isfinite(r)) {
      throw SpecError("excess-volatility: ratios must be >= 1");
    }
  }
  const ProcessSpec& spec = config.spec;
  spec.validate();
  const AnyPricer base = true_pricer(spec);
  const std::size_t n = spec.horizon.n_steps();
  const double T = spec.horizon.T();

  // per_path[i * ratios + r]
  std::vector<double> per_path(config.n_paths * ratios.size());
  parallel_for(config.n_paths, config.threads, [&](std::size_t i) {
    const Path path = simulate(spec, config.seed, i);
    for (std::size_t r = 0; r < ratios.size(); ++r) {
      double sum = 0.0;
      std::visit(
          [&](const auto& p) {
            const auto implied = p.scaled(ratios[r]);
            for (std::size_t k = 0; k < n; ++k) {
              sum += std::abs(implied(path.values[k], path.grid[k], T) - 0.5);
            }
          },
          base);
      per_path[i * ratios.size() + r] = sum / static_cast<double>(n);
    }
  });

  ExcessVolatilityResult result;
  for (std::size_t r = 0; r < ratios.size(); ++r) {
    double sum = 0.0;
    for (std::size_t i = 0; i < config.n_paths; ++i) sum += per_path[i * ratios.size() + r];
    result.rows.push_back({ratios[r], sum / static_cast<double>(config.n_paths)});
  }
  std::vector<ExcessVolatilityRow> sorted = result.rows;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.ratio < b.ratio; });
  result.monotone = true;
  for (std::size_t r = 1; r < sorted.size(); ++r) {
    if (!(sorted[r].ratio > sorted[r - 1].ratio &&
          sorted[r].mean_abs_deviation < sorted[r - 1].mean_abs_deviation)) {
      result.monotone = false;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Figures
// ---------------------------------------------------------------------------

/// Figure parameters. Figure 3's horizon, grid and threshold are not given
/// by the source figure; these are configured choices.
struct FigureOptions {
  double walk_step = kDefaultWalkStep;
  std::size_t walk_days = 1000;
  double y0 = 0.5;
  double threshold = 0.5;
  double taleb_sigma = 1.0;
  double taleb_T = 1.0;
  std::size_t taleb_steps = 365;
};

struct FigureResult {
  int fig_id = 1;
  FigureOptions options;
  Path path;
  std::optional<ForecastSeries> series;
};

/// Figure 1: random-walk vote share. Figure 2: its win probability (same
/// seed, same path). Figure 3: win probability under the bounded model.
inline FigureResult reproduce_figure(int fig_id, std::uint64_t seed,
                                     const FigureOptions& options = {}) {
  FigureResult result;
  result.fig_id = fig_id;
  result.options = options;
  switch (fig_id) {
    case 1:
    case 2: {
      const ProcessSpec spec = ProcessSpec::random_walk(options.walk_step, options.y0,
                                                        options.threshold, options.walk_days);
      result.path = simulate_random_walk(spec, seed, 0);
      if (result.path.clamp_events > 0) {
        throw SpecError("figure: random walk reached the [step, 1 - step] boundary");
      }
      if (fig_id == 2) {
        result.series = forecast_series(result.path, RandomWalkPricer{spec.step, spec.threshold});
      }
      return result;
    }
    case 3: {
      const ProcessSpec spec =
          ProcessSpec::bounded(options.taleb_sigma, options.y0, options.threshold,
                               TimeGrid(0.0, options.taleb_T, options.taleb_steps));
      result.path = simulate_bounded_y(spec, seed, 0);
      result.series = forecast_series(result.path, TalebPricer{spec.sigma, spec.threshold});
      return result;
    }
    default:
      throw SpecError("figure: unknown figure id " + std::to_string(fig_id) +
                      " (expected 1, 2 or 3)");
  }
}

namespace detail {

inline void write_text(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << text;
}

inline std::vector<double> in_days(const TimeGrid& grid) {
  std::vector<double> days = grid.points();
  for (auto& d : days) d *= kDaysPerYear;
  return days;
}

}  // namespace detail

/// Writes the figure's CSV file(s) and SVG chart into out_dir; returns the
/// files written.
inline std::vector<std::filesystem::path> write_figure(const FigureResult& fig,
                                                       const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::string stem = "fig" + std::to_string(fig.fig_id);
  std::vector<std::filesystem::path> files;
  const auto days = detail::in_days(fig.path.grid);

  if (fig.fig_id != 2) {
    std::ostringstream csv;
    write_path_csv(csv, fig.path);
    files.push_back(out_dir / (stem + "_path.csv"));
    detail::write_text(files.back(), csv.str());
  }
  if (fig.series) {
    std::ostringstream csv;
    write_series_csv(csv, *fig.series);
    files.push_back(out_dir / (stem + "_series.csv"));
    detail::write_text(files.back(), csv.str());
  }

  std::string svg;
  if (fig.fig_id == 1) {
    char step[32];
    std::snprintf(step, sizeof step, "%g", fig.options.walk_step);
    svg = line_chart_svg(days, fig.path.values,
                         std::string("Simulated vote share, random walk (step ") + step + ")",
                         "time (days)", "vote share");
  } else {
    svg = line_chart_svg(days, fig.series->probs,
                         fig.fig_id == 2 ? "Simulated win probability, random walk"
                                         : "Simulated win probability, bounded martingale model",
                         "time (days)", "win probability");
  }
  files.push_back(out_dir / (stem + ".svg"));
  detail::write_text(files.back(), svg);
  return files;
}

}  // namespace efmart

#endif  // EFMART_EXPERIMENTS_HPP_
