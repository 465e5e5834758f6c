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

#ifndef EFMART_FORECAST_HPP_
#define EFMART_FORECAST_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "efmart/errors.hpp"
#include "efmart/parallel.hpp"
#include "efmart/pricing.hpp"
#include "efmart/process.hpp"
#include "efmart/rng.hpp"
#include "efmart/sde.hpp"

#include "json.hpp"

namespace efmart {

/// Forecast probabilities B(t_k, T) along one path. The last entry is the
/// settled payoff.
struct ForecastSeries {
  TimeGrid grid{0.0, 1.0, 1};
  std::vector<double> probs;
  Path source_path;
  std::string pricer_id;
};

/// Quotes `pricer` at every grid point of `path`, settling the final point
/// with maturity_value. Pricers condition on the current value only; every
/// process here is Markov so that is the full filtration.
template <Pricer P>
ForecastSeries forecast_series(const Path& path, const P& pricer) {
  if (!pricer.accepts(path.kind)) {
    throw SpecError("forecast_series: pricer '" + std::string(P::id) +
                    "' does not apply to " + std::string(to_string(path.kind)) +
                    " paths");
  }
  if (path.values.size() != path.grid.size()) {
    throw SpecError("forecast_series: path length does not match its grid");
  }
  ForecastSeries series{path.grid, {}, path, std::string(P::id)};
  const std::size_t n = path.grid.n_steps();
  const double T = path.grid.T();
  series.probs.resize(n + 1);
  for (std::size_t k = 0; k < n; ++k) {
    series.probs[k] = pricer(path.values[k], path.grid[k], T);
  }
  series.probs[n] = maturity_value(path.values[n], pricer.threshold);
  return series;
}

inline ForecastSeries forecast_series(const Path& path, const AnyPricer& pricer) {
  return std::visit([&](const auto& p) { return forecast_series(path, p); }, pricer);
}

/// One outer path of the nested tower-property check.
struct MartingaleReport {
  double s = 0.0;
  double t = 0.0;
  double b_s = 0.0;
  double mean_b_t = 0.0;
  double std_error = 0.0;
  std::size_t n_inner = 0;
  bool pass = false;
};

inline void to_json(nlohmann::json& j, const MartingaleReport& r) {
  j = nlohmann::json{{"s", r.s},
                     {"t", r.t},
                     {"b_s", r.b_s},
                     {"mean_b_t", r.mean_b_t},
                     {"std_error", r.std_error},
                     {"n_inner", r.n_inner},
                     {"verdict", r.pass ? "pass" : "fail"}};
}

inline constexpr double kMartingaleSigmas = 3.0;
inline constexpr std::size_t kMinInnerPaths = 1000;

/// Checks E[B(t,T) | F_s] = B(s,T) by nested Monte Carlo. For each outer
/// path the state at s is drawn from y0, b_s is quoted there, and n_inner
/// independent continuations to t are averaged.
///
/// Outer path i uses stream (seed, i); its continuations use streams
/// (derive_seed(seed, i + 1), j). Reports come back in outer-index order.
template <Pricer P>
std::vector<MartingaleReport> check_martingale(const ProcessSpec& spec,
                                               const P& pricer, double s, double t,
                                               std::size_t n_outer,
                                               std::size_t n_inner,
                                               std::uint64_t seed,
                                               unsigned threads = 1) {
  spec.validate();
  if (!pricer.accepts(spec.kind)) {
    throw SpecError("check_martingale: pricer '" + std::string(P::id) +
                    "' does not apply to " + std::string(to_string(spec.kind)));
  }
  const double t0 = spec.horizon.t0();
  const double T = spec.horizon.T();
  if (!(t0 <= s && s < t && t < T)) {
    throw SpecError("check_martingale: requires t0 <= s < t < T");
  }
  if (n_inner < kMinInnerPaths) {
    throw SpecError("check_martingale: n_inner must be >= 1000");
  }
  if (n_outer == 0) throw SpecError("check_martingale: n_outer must be >= 1");

  std::vector<MartingaleReport> reports(n_outer);
  parallel_for(n_outer, threads, [&](std::size_t i) {
    RandomStream outer(seed, i);
    const double state_s = propagate(spec, spec.y0, t0, s, outer);
    const double b_s = pricer(state_s, s, T);

    const std::uint64_t inner_seed = derive_seed(seed, i + 1);
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t j = 0; j < n_inner; ++j) {
      RandomStream inner(inner_seed, j);
      const double b_t = pricer(propagate(spec, state_s, s, t, inner), t, T);
      const double delta = b_t - mean;
      mean += delta / static_cast<double>(j + 1);
      m2 += delta * (b_t - mean);
    }
    const double n = static_cast<double>(n_inner);
    const double se = std::sqrt(m2 / (n - 1.0) / n);
    reports[i] = {s, t, b_s, mean, se, n_inner,
                  std::abs(mean - b_s) <= kMartingaleSigmas * se};
  });
  return reports;
}

inline std::vector<MartingaleReport> check_martingale(
    const ProcessSpec& spec, const AnyPricer& pricer, double s, double t,
    std::size_t n_outer, std::size_t n_inner, std::uint64_t seed,
    unsigned threads = 1) {
  return std::visit(
      [&](const auto& p) {
        return check_martingale(spec, p, s, t, n_outer, n_inner, seed, threads);
      },
      pricer);
}

/// Aggregate verdict: at most one failure in twenty (19 of 20 at 3 SE).
inline bool martingale_holds(std::span<const MartingaleReport> reports) {
  std::size_t passed = 0;
  for (const auto& r : reports) passed += r.pass ? 1 : 0;
  return !reports.empty() && 20 * passed >= 19 * reports.size();
}

/// Brier score (1/n) sum (o_i - p_i)^2.
inline double brier_score(std::span<const double> probs, std::span<const int> outcomes) {
  if (probs.size() != outcomes.size()) {
    throw DomainError("brier_score: probs and outcomes differ in length");
  }
  if (probs.empty()) throw DomainError("brier_score: empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!(probs[i] >= 0.0 && probs[i] <= 1.0)) {
      throw DomainError("brier_score: probabilities must lie in [0, 1]");
    }
    if (outcomes[i] != 0 && outcomes[i] != 1) {
      throw DomainError("brier_score: outcomes must be 0 or 1");
    }
    const double d = static_cast<double>(outcomes[i]) - probs[i];
    sum += d * d;
  }
  return sum / static_cast<double>(probs.size());
}

}  // namespace efmart

#endif  // EFMART_FORECAST_HPP_
