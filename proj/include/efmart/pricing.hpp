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

#ifndef EFMART_PRICING_HPP_
#define EFMART_PRICING_HPP_

#include <cmath>
#include <concepts>
#include <string>
#include <string_view>
#include <variant>

#include "efmart/errors.hpp"
#include "efmart/process.hpp"
#include "efmart/sde.hpp"
#include "efmart/special.hpp"

namespace efmart {

namespace detail {

inline double time_to_expiry(double t, double T, const char* who) {
  if (!std::isfinite(t) || !std::isfinite(T)) {
    throw DomainError(std::string(who) + ": times must be finite");
  }
  if (T == t) {
    throw MaturityError(std::string(who) +
                        ": zero time to expiry, use maturity_value");
  }
  if (T < t) throw DomainError(std::string(who) + ": requires t < T");
  return T - t;
}

inline void require_positive_sigma(double sigma, const char* who) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw DomainError(std::string(who) + ": sigma must be positive");
  }
}

inline void require_unit_open(double v, const char* name, const char* who) {
  if (!(v > 0.0 && v < 1.0)) {
    throw DomainError(std::string(who) + ": " + name + " must lie in (0, 1)");
  }
}

// 1 - Phi(z) without cancellation.
inline double upper_tail(double z) { return 0.5 * std::erfc(z / kSqrt2); }

}  // namespace detail

/// Binary payoff at expiry: 1 above the threshold, 0 below, 1/2 on a tie.
inline double maturity_value(double y_T, double l) {
  if (y_T > l) return 1.0;
  if (y_T < l) return 0.0;
  return 0.5;
}

/// P[Y_T > l | Y_t = y_t] for dY = mu dt + sigma dW:
/// 1 - Phi((l - y_t - mu tau) / (sigma sqrt(tau))).
inline double binary_price_gaussian(double y_t, double t, double T, double mu,
                                    double sigma, double l) {
  constexpr const char* who = "binary_price_gaussian";
  const double tau = detail::time_to_expiry(t, T, who);
  detail::require_positive_sigma(sigma, who);
  return detail::upper_tail((l - y_t - mu * tau) / (sigma * std::sqrt(tau)));
}

/// P[X_T > x_l | X_t = x_t] for the shadow process, from its Gaussian
/// transition. With a = sigma^2 tau the standardized distance
///   (x_l - x_t e^a) / sqrt((e^{2a} - 1) / 2)
/// is evaluated after dividing through by e^a, so large a does not overflow.
inline double binary_price_shadow(double x_t, double t, double T, double sigma,
                                  double x_l) {
  constexpr const char* who = "binary_price_shadow";
  const double tau = detail::time_to_expiry(t, T, who);
  detail::require_positive_sigma(sigma, who);
  const double a = sigma * sigma * tau;
  const double scale = std::sqrt(-0.5 * std::expm1(-2.0 * a));
  return detail::upper_tail((x_l * std::exp(-a) - x_t) / scale);
}

/// Binary price on the bounded martingale Y = S(X): the shadow price at
/// x = S^{-1}(y_t), x_l = S^{-1}(l). Because Y is a martingale this is both
/// the zero-rate price and P[Y_T > l | Y_t].
inline double binary_price_taleb(double y_t, double t, double T, double sigma,
                                 double l) {
  constexpr const char* who = "binary_price_taleb";
  detail::require_unit_open(y_t, "y_t", who);
  detail::require_unit_open(l, "l", who);
  detail::time_to_expiry(t, T, who);
  detail::require_positive_sigma(sigma, who);
  return binary_price_shadow(transform_S_inverse(y_t), t, T, sigma,
                             transform_S_inverse(l));
}

/// Gaussian approximation of the +/- step walk: zero drift and
/// sigma sqrt(tau) = step sqrt(days_remaining).
inline double binary_price_random_walk(double y_t, long long days_remaining,
                                       double step, double l) {
  constexpr const char* who = "binary_price_random_walk";
  if (days_remaining < 1) {
    throw MaturityError(std::string(who) + ": days_remaining must be >= 1");
  }
  if (!(step > 0.0)) throw DomainError(std::string(who) + ": step must be positive");
  const double days = static_cast<double>(days_remaining);
  return binary_price_gaussian(y_t, 0.0, days, 0.0, step, l);
}

/// P[B(t,T) < x] for the Brownian-drift price process started at Y_0 = 0:
///   Phi((l - mu T) / (sigma sqrt t) - sqrt(T/t - 1) Phi^{-1}(1 - x)).
inline double price_path_cdf(double x, double t, double T, double mu,
                             double sigma, double l, double y0 = 0.0) {
  constexpr const char* who = "price_path_cdf";
  if (y0 != 0.0) throw DomainError(std::string(who) + ": only Y_0 = 0 is supported");
  if (!(t > 0.0 && t < T)) throw DomainError(std::string(who) + ": requires 0 < t < T");
  detail::require_positive_sigma(sigma, who);
  detail::require_unit_open(x, "x", who);
  return normal_cdf((l - mu * T) / (sigma * std::sqrt(t)) -
                    std::sqrt(T / t - 1.0) * normal_quantile(1.0 - x));
}

/// A priced point of a binary contract.
struct BinaryQuote {
  double t = 0.0;
  double T = 0.0;
  double price = 0.0;
  ProcessKind kind = ProcessKind::BrownianDrift;
};

// ---------------------------------------------------------------------------
// Pricers: callables (value, t, T) -> P[value_T > threshold | value_t].
// ---------------------------------------------------------------------------

struct GaussianPricer {
  static constexpr std::string_view id = "gaussian";
  double mu = 0.0;
  double sigma = 1.0;
  double threshold = 0.0;

  double operator()(double y, double t, double T) const {
    return binary_price_gaussian(y, t, T, mu, sigma, threshold);
  }
  bool accepts(ProcessKind kind) const { return kind == ProcessKind::BrownianDrift; }
  GaussianPricer scaled(double ratio) const { return {mu, sigma * ratio, threshold}; }
};

struct ShadowPricer {
  static constexpr std::string_view id = "shadow";
  double sigma = 1.0;
  double threshold = 0.0;  // in x space

  double operator()(double x, double t, double T) const {
    return binary_price_shadow(x, t, T, sigma, threshold);
  }
  bool accepts(ProcessKind kind) const { return kind == ProcessKind::ShadowX; }
  ShadowPricer scaled(double ratio) const { return {sigma * ratio, threshold}; }
};

struct TalebPricer {
  static constexpr std::string_view id = "taleb";
  double sigma = 1.0;
  double threshold = 0.5;

  double operator()(double y, double t, double T) const {
    return binary_price_taleb(y, t, T, sigma, threshold);
  }
  bool accepts(ProcessKind kind) const { return kind == ProcessKind::BoundedY; }
  TalebPricer scaled(double ratio) const { return {sigma * ratio, threshold}; }
};

struct RandomWalkPricer {
  static constexpr std::string_view id = "random-walk";
  double step = kDefaultWalkStep;
  double threshold = 0.5;

  double operator()(double y, double t, double T) const {
    const double days = (T - t) * kDaysPerYear;
    return binary_price_random_walk(y, std::llround(days), step, threshold);
  }
  bool accepts(ProcessKind kind) const { return kind == ProcessKind::RandomWalk; }
  RandomWalkPricer scaled(double ratio) const { return {step * ratio, threshold}; }
};

template <class P>
concept Pricer = requires(const P& p, double v, ProcessKind kind) {
  { p(v, v, v) } -> std::convertible_to<double>;
  { p.threshold } -> std::convertible_to<double>;
  { p.accepts(kind) } -> std::same_as<bool>;
  { p.scaled(v) } -> std::same_as<P>;
  { P::id } -> std::convertible_to<std::string_view>;
};

using AnyPricer = std::variant<GaussianPricer, ShadowPricer, TalebPricer, RandomWalkPricer>;

inline std::string_view pricer_id(const AnyPricer& pricer) {
  return std::visit([](const auto& p) -> std::string_view { return p.id; }, pricer);
}

/// The pricer that equals the true conditional exceedance probability of
/// `spec` (for RandomWalk, its Gaussian approximation).
inline AnyPricer true_pricer(const ProcessSpec& spec) {
  switch (spec.kind) {
    case ProcessKind::BrownianDrift: return GaussianPricer{spec.mu, spec.sigma, spec.threshold};
    case ProcessKind::ShadowX: return ShadowPricer{spec.sigma, spec.threshold};
    case ProcessKind::BoundedY: return TalebPricer{spec.sigma, spec.threshold};
    case ProcessKind::RandomWalk: return RandomWalkPricer{spec.step, spec.threshold};
  }
  throw SpecError("true_pricer: unknown process kind");
}

template <Pricer P>
BinaryQuote quote(const P& pricer, ProcessKind kind, double value, double t, double T) {
  return {t, T, pricer(value, t, T), kind};
}

}  // namespace efmart

#endif  // EFMART_PRICING_HPP_
