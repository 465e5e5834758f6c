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

#ifndef EFMART_SPECIAL_HPP_
#define EFMART_SPECIAL_HPP_

#include <cmath>
#include <numbers>

#include "efmart/errors.hpp"

namespace efmart {

inline constexpr double kSqrt2 = std::numbers::sqrt2;
inline constexpr double kInvSqrtPi = std::numbers::inv_sqrtpi;

/// Standard normal CDF. Evaluated through erfc so both tails keep full
/// relative precision.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

/// Standard normal density.
inline double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) * kInvSqrtPi / kSqrt2;
}

namespace detail {

// Acklam's rational approximation for the lower half, p in (0, 0.5].
// Relative error ~1e-9; callers polish with a Halley step.
inline double acklam_lower(double p) {
  constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                          -2.759285104469687e+02, 1.383577518672690e+02,
                          -3.066479806614716e+01, 2.506628277459239e+00};
  constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                          -1.556989798598866e+02, 6.680131188771972e+01,
                          -1.328068155288572e+01};
  constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                          -2.400758277161838e+00, -2.549732539343734e+00,
                          4.374664141464968e+00,  2.938163982698783e+00};
  constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                          2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
          a[5]) *
         q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

inline double normal_quantile_lower(double p) {
  double x = acklam_lower(p);
  // Halley refinement against the erfc-based CDF.
  for (int i = 0; i < 2; ++i) {
    const double e = normal_cdf(x) - p;
    const double u = e / normal_pdf(x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

}  // namespace detail

/// Inverse of normal_cdf on the open interval (0, 1).
inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("normal_quantile: p must lie in (0, 1)");
  }
  if (p == 0.5) return 0.0;
  // 1 - p is exact for p >= 0.5, so the upper half reflects without loss.
  return p < 0.5 ? detail::normal_quantile_lower(p)
                 : -detail::normal_quantile_lower(1.0 - p);
}

/// erf^{-1}(z) for z in (-1, 1).
inline double erf_inverse(double z) {
  if (!(z > -1.0 && z < 1.0)) {
    throw DomainError("erf_inverse: z must lie in (-1, 1)");
  }
  return normal_quantile(0.5 * (z + 1.0)) / kSqrt2;
}

}  // namespace efmart

#endif  // EFMART_SPECIAL_HPP_
