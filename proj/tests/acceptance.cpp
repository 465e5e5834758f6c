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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "cli_harness.hpp"
#include "efmart.hpp"

using namespace efmart;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome uniformity() {
  ExperimentConfig c = default_config("uniformity");
  c.n_paths = 100000;
  c.seed = 1;
  c.threads = 1;
  const auto start = std::chrono::steady_clock::now();
  const auto r = run_uniformity(c);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double bound = 1.628 / std::sqrt(1e5);
  return {r.ks_statistic < bound && secs < 10.0,
          fmt("KS %.5f < %.5f, %.2f s", r.ks_statistic, bound, secs)};
}

Outcome sigma_invariance() {
  ExperimentConfig c = default_config("sigma-invariance");
  c.n_paths = 10000;
  c.seed = 1;
  const std::vector<double> sigmas{0.5, 1.0, 2.0, 10.0};
  const auto r = run_sigma_invariance(c, sigmas);
  double worst = 0.0;
  for (const auto& p : r.pairwise) worst = std::max(worst, p.ks_statistic);
  return {r.pass() && r.pairwise.size() == 6,
          fmt("6 pairs, max KS %.5f vs critical %.5f", worst,
              ks_critical_value(0.01, 10000, 10000))};
}

Outcome analytic_cdf() {
  constexpr double mu = 0.3, sigma = 0.8, l = 0.1, T = 1.0, t = 0.5;
  const auto spec = ProcessSpec::brownian_drift(mu, sigma, 0.0, l, TimeGrid(0, T, 2));
  const GaussianPricer pricer{mu, sigma, l};
  constexpr std::size_t n = 100000;
  std::vector<double> prices(n);
  for (std::size_t i = 0; i < n; ++i) prices[i] = pricer(simulate(spec, 2, i).values[1], t, T);
  std::sort(prices.begin(), prices.end());
  double sup = 0.0;
  for (int k = 1; k <= 99; ++k) {
    const double x = k / 100.0;
    const double ecdf = static_cast<double>(std::lower_bound(prices.begin(), prices.end(), x) -
                                            prices.begin()) / n;
    sup = std::max(sup, std::abs(ecdf - price_path_cdf(x, t, T, mu, sigma, l)));
  }
  return {sup < 0.01, fmt("sup |ECDF - cdf| = %.5f < 0.01", sup)};
}

Outcome sigma_limit() {
  const double ys[] = {-2.0, -0.3, 0.0, 0.4, 1.5};
  const double ls[] = {0.0, 0.5, -1.0, 2.0};
  double worst = 0.0;
  int count = 0;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double mu = (i + j) % 3 - 1.0;
      const double tau = 0.1 + 0.7 * j;
      worst = std::max(worst, std::abs(binary_price_gaussian(ys[i], 0.0, tau, mu, 1e6, ls[j]) - 0.5));
      ++count;
    }
  }
  return {count == 20 && worst < 1e-3, fmt("%.0f combinations, max |p - 0.5| = %.3g", count, worst)};
}

Outcome martingale() {
  const std::pair<double, double> st[] = {{0.1, 0.4}, {0.25, 0.5}, {0.5, 0.9}};
  const auto bm = ProcessSpec::brownian_drift(0.2, 1.0, 0.0, 0.1, TimeGrid(0, 1, 1));
  const auto by = ProcessSpec::bounded(1.0, 0.5, 0.5, TimeGrid(0, 1, 1));
  bool ok = true;
  std::string detail;
  std::uint64_t seed = 100;
  for (const auto* spec : {&bm, &by}) {
    for (const auto& [s, t] : st) {
      const auto reports = check_martingale(*spec, true_pricer(*spec), s, t, 20, 10000, seed++);
      const auto passed = std::count_if(reports.begin(), reports.end(),
                                        [](const MartingaleReport& r) { return r.pass; });
      ok = ok && martingale_holds(reports);
      detail += std::to_string(passed) + "/20 ";
    }
  }
  return {ok, "brownian, bounded: " + detail};
}

Outcome taleb_vs_mc() {
  struct Point { double y, sigma, tau, l; };
  const Point points[] = {{0.6, 1.0, 0.25, 0.5}, {0.3, 0.5, 1.0, 0.5},  {0.55, 2.0, 0.5, 0.5},
                          {0.8, 1.0, 2.0, 0.6},  {0.2, 0.3, 0.3, 0.25}, {0.65, 1.5, 0.1, 0.7},
                          {0.5, 0.8, 1.0, 0.4},  {0.9, 0.4, 0.5, 0.85}, {0.1, 1.2, 0.7, 0.2},
                          {0.45, 3.0, 0.2, 0.5}};
  constexpr std::size_t n = 1000000;
  int within = 0;
  double worst = 0.0;
  std::uint64_t seed = 700;
  for (const auto& p : points) {
    const auto spec = ProcessSpec::bounded(p.sigma, p.y, p.l, TimeGrid(0, p.tau, 1));
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) hits += simulate(spec, seed, i).terminal() > p.l;
    ++seed;
    const double f = static_cast<double>(hits) / n;
    const double se = std::sqrt(f * (1 - f) / n);
    const double z = std::abs(binary_price_taleb(p.y, 0.0, p.tau, p.sigma, p.l) - f) / se;
    worst = std::max(worst, z);
    within += z <= 3.0;
  }
  return {within == 10, fmt("%.0f/10 within 3 SE, worst %.2f SE", within, worst)};
}

Outcome ode_identity() {
  double worst_fd = 0.0;
  bool exact = true;
  const double h = 1e-4;
  for (int i = 0; i <= 80; ++i) {
    const double x = -4.0 + 0.1 * i;
    const double s1 = (transform_S(x + h) - transform_S(x - h)) / (2 * h);
    const double s2 = (transform_S(x + h) - 2 * transform_S(x) + transform_S(x - h)) / (h * h);
    worst_fd = std::max(worst_fd, std::abs(0.5 * s2 + x * s1));
    exact = exact && ode_identity_residual(x) == 0.0;
  }
  return {worst_fd < 1e-6 && exact,
          fmt("81 points, FD residual %.3g, closed form ", worst_fd) + (exact ? "exactly 0" : "nonzero")};
}

Outcome figures() {
  bool envelope = true;
  int wide = 0, exits = 0;
  bool settled = true;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto f1 = reproduce_figure(1, seed);
    const double y0 = f1.options.y0, step = f1.options.walk_step;
    for (std::size_t k = 1; k < f1.path.values.size(); ++k) {
      envelope = envelope && std::abs(f1.path.values[k] - y0) <= 10.0 * step * std::sqrt(double(k));
    }
    const auto& p2 = reproduce_figure(2, seed).series->probs;
    const auto [lo, hi] = std::minmax_element(p2.begin(), p2.end() - 1);
    wide += *hi - *lo > 0.5;
    const auto& p3 = reproduce_figure(3, seed).series->probs;
    settled = settled && (p3.back() == 0.0 || p3.back() == 0.5 || p3.back() == 1.0);
    exits += std::any_of(p3.begin(), p3.end() - 1, [](double p) { return p < 0.45 || p > 0.55; });
  }
  return {envelope && wide >= 1 && exits >= 1 && settled,
          fmt("fig 2 wide on %.0f/20 seeds, fig 3 exits on %.0f/20", wide, exits) +
              (envelope ? ", envelope held" : ", envelope broken") +
              (settled ? ", settled" : ", bad terminal")};
}

Outcome excess_volatility() {
  ExperimentConfig c = default_config("excess-volatility");
  const std::vector<double> ratios{1.0, 2.0, 5.0, 10.0};
  int monotone = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    c.seed = seed;
    monotone += run_excess_volatility(c, ratios).monotone;
  }
  return {monotone == 10, fmt("strictly decreasing on %.0f/10 seeds", monotone)};
}

Outcome brier() {
  const std::vector<double> p1{1, 0, 1}, p2{0.5, 0.5}, p3{0.8, 0.3};
  const std::vector<int> o1{1, 0, 1}, o2a{1, 0}, o2b{1, 1}, o3{1, 0};
  double err = std::abs(brier_score(p1, o1));
  err = std::max(err, std::abs(brier_score(p2, o2a) - 0.25));
  err = std::max(err, std::abs(brier_score(p2, o2b) - 0.25));
  err = std::max(err, std::abs(brier_score(p3, o3) - 0.065));

  constexpr std::size_t n = 100000;
  RandomStream rng(2024, 0);
  std::vector<int> outcomes(n);
  for (auto& o : outcomes) o = rng.uniform() < 0.7;
  double best_q = -1, best = 2;
  for (int k = 0; k <= 100; ++k) {
    const double q = k / 100.0;
    const std::vector<double> probs(n, q);
    const double b = brier_score(probs, outcomes);
    if (b < best) best = b, best_q = q;
  }
  // The empirical minimiser is the sample frequency, within 0.01 of 0.7 by many SEs.
  return {err < 1e-15 && std::abs(best_q - 0.7) <= 0.01,
          fmt("example error %.3g, minimiser on 0.01 grid %.2f", err, best_q)};
}

Outcome replay() {
  const auto dir = cli::scratch("acceptance_replay");
  const std::vector<std::string> runs = {
      "experiment uniformity --seed 5",
      "experiment sigma-invariance --seed 6",
      "experiment excess-volatility --seed 7",
      "simulate --kind bounded --sigma 1 --steps 365 --seed 8",
      "figure 3 --seed 9",
  };
  int identical = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const std::string a = "a" + std::to_string(i), b = "b" + std::to_string(i);
    if (cli::run(runs[i] + " --out " + a, dir).exit_code != 0) continue;
    if (cli::run("--replay " + a + "/manifest.json --out " + b, dir).exit_code != 0) continue;
    bool same = true;
    for (const auto& e : fs::directory_iterator(dir / a)) {
      const auto name = e.path().filename();
      if (name == "manifest.json") continue;
      same = same && fs::exists(dir / b / name) && cli::slurp(e.path()) == cli::slurp(dir / b / name);
    }
    identical += same;
  }
  return {identical == static_cast<int>(runs.size()),
          fmt("%.0f/%.0f replays byte-identical", identical, runs.size())};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"uniformity of midpoint prices", uniformity},
      {"sigma invariance", sigma_invariance},
      {"analytic price CDF", analytic_cdf},
      {"large-sigma limit", sigma_limit},
      {"tower-property martingale check", martingale},
      {"bounded pricer vs Monte Carlo", taleb_vs_mc},
      {"transform ODE identity", ode_identity},
      {"figure structure", figures},
      {"excess-volatility monotonicity", excess_volatility},
      {"Brier score", brier},
      {"manifest replay determinism", replay},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s [%zu] %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
