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

#ifndef EFMART_KS_HPP_
#define EFMART_KS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "efmart/errors.hpp"

namespace efmart {

/// Asymptotic Kolmogorov distribution quantile c(alpha), so that
/// P[sqrt(n) D_n > c(alpha)] -> alpha. Tabulated at the usual levels,
/// sqrt(-ln(alpha / 2) / 2) elsewhere.
inline double ks_coefficient(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("ks_coefficient: alpha must lie in (0, 1)");
  struct Entry { double alpha, c; };
  constexpr Entry table[] = {{0.20, 1.073}, {0.10, 1.224}, {0.05, 1.358},
                             {0.025, 1.480}, {0.01, 1.628}, {0.005, 1.731},
                             {0.001, 1.949}};
  for (const auto& e : table) {
    if (std::abs(alpha - e.alpha) < 1e-12) return e.c;
  }
  return std::sqrt(-0.5 * std::log(0.5 * alpha));
}

inline double ks_critical_value(double alpha, std::size_t n) {
  if (n == 0) throw DomainError("ks_critical_value: n must be positive");
  return ks_coefficient(alpha) / std::sqrt(static_cast<double>(n));
}

inline double ks_critical_value(double alpha, std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw DomainError("ks_critical_value: sample sizes must be positive");
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return ks_coefficient(alpha) * std::sqrt((nn + mm) / (nn * mm));
}

/// sup_x |F_n(x) - cdf(x)| for a continuous reference cdf.
template <class Cdf>
double ks_statistic(std::span<const double> samples, Cdf&& cdf) {
  if (samples.empty()) throw DomainError("ks_statistic: empty sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double below = f - static_cast<double>(i) / n;
    const double above = static_cast<double>(i + 1) / n - f;
    d = std::max({d, below, above});
  }
  return d;
}

inline double ks_statistic_uniform(std::span<const double> samples) {
  return ks_statistic(samples, [](double x) { return std::clamp(x, 0.0, 1.0); });
}

/// Two-sample statistic sup_x |F_a(x) - F_b(x)|. Ties are stepped together.
inline double ks_statistic_two_sample(std::span<const double> a,
                                      std::span<const double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_statistic_two_sample: empty sample");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == x) ++i;
    while (j < sb.size() && sb[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace efmart

#endif  // EFMART_KS_HPP_
