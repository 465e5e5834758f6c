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

// Test-only reference computations. Nothing here calls into the library's
// special functions or transitions.

#ifndef EFMART_TESTS_ORACLES_HPP_
#define EFMART_TESTS_ORACLES_HPP_

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

// erf(x) = 2/sqrt(pi) sum_{n>=0} (-1)^n x^{2n+1} / (n! (2n+1)), 30 terms in
// long double. Converged to double precision for |x| <= 2.
inline double erf_series(double xd) {
  const long double x = xd;
  long double term = x;  // (-1)^n x^{2n+1} / n!
  long double sum = 0.0L;
  for (int n = 0; n < 30; ++n) {
    sum += term / (2 * n + 1);
    term *= -x * x / (n + 1);
  }
  return static_cast<double>(sum * 2.0L / std::sqrt(3.14159265358979323846264338327950288L));
}

// Exact P[K >= k_min] for K ~ Binomial(n, 1/2), via log-binomial sums.
inline double binomial_upper_tail(int n, int k_min) {
  long double total = 0.0L;
  for (int k = std::max(k_min, 0); k <= n; ++k) {
    const long double log_p = std::lgamma(n + 1.0L) - std::lgamma(k + 1.0L) -
                              std::lgamma(n - k + 1.0L) - n * std::log(2.0L);
    total += std::exp(log_p);
  }
  return static_cast<double>(total);
}

// Euler-Maruyama for dX = sigma^2 X dt + sigma dW with the given normals.
inline double euler_shadow(double x0, double sigma, double T, std::size_t n,
                           const double* normals) {
  const double dt = T / static_cast<double>(n);
  const double sq = std::sqrt(dt);
  double x = x0;
  for (std::size_t k = 0; k < n; ++k) x += sigma * sigma * x * dt + sigma * sq * normals[k];
  return x;
}

// Composite Simpson rule on [a, b] with n (even) panels.
template <class F>
double simpson(F&& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

inline Moments moments(const std::vector<double>& xs) {
  Moments m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  for (double x : xs) m.variance += (x - m.mean) * (x - m.mean);
  m.variance /= static_cast<double>(xs.size() - 1);
  return m;
}

}  // namespace oracle

#endif  // EFMART_TESTS_ORACLES_HPP_
