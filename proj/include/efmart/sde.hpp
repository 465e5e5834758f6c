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

#ifndef EFMART_SDE_HPP_
#define EFMART_SDE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "efmart/errors.hpp"
#include "efmart/process.hpp"
#include "efmart/rng.hpp"
#include "efmart/special.hpp"
#include "efmart/time_grid.hpp"

namespace efmart {

// ---------------------------------------------------------------------------
// The bounding transform S(x) = 1/2 + 1/2 erf(x).
// ---------------------------------------------------------------------------

/// S(x). Written as erfc(-x)/2, which equals 1/2 + erf(x)/2 but keeps
/// relative precision deep in the lower tail.
inline double transform_S(double x) { return 0.5 * std::erfc(-x); }

inline double transform_S_prime(double x) { return std::exp(-x * x) * kInvSqrtPi; }

inline double transform_S_second(double x) {
  return -2.0 * x * transform_S_prime(x);
}

/// S^{-1}(y) = erfinv(2y - 1) for y in (0, 1).
inline double transform_S_inverse(double y) {
  if (!(y > 0.0 && y < 1.0)) {
    throw DomainError("transform_S_inverse: y must lie in (0, 1)");
  }
  if (y == 0.5) return 0.0;
  if (y > 0.5) return -transform_S_inverse(1.0 - y);
  double x = detail::normal_quantile_lower(y) / kSqrt2;
  // One Newton step directly on S removes the rounding of the sqrt(2) scaling.
  const double slope = transform_S_prime(x);
  if (slope > 0.0) x -= (transform_S(x) - y) / slope;
  return x;
}

/// 1/2 S''(x) + x S'(x) from the closed-form derivatives. Identically zero;
/// this is the drift of dS(X) under dX = sigma^2 X dt + sigma dW, divided by
/// sigma^2.
inline double ode_identity_residual(double x) {
  return 0.5 * transform_S_second(x) + x * transform_S_prime(x);
}

// ---------------------------------------------------------------------------
// Paths
// ---------------------------------------------------------------------------

/// One realized trajectory on a grid, with the (seed, path_index) that
/// produced it.
struct Path {
  ProcessKind kind = ProcessKind::BrownianDrift;
  TimeGrid grid{0.0, 1.0, 1};
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::uint64_t path_index = 0;
  /// RandomWalk only: number of steps that hit the [step, 1 - step] clamp.
  std::size_t clamp_events = 0;

  double terminal() const { return values.back(); }
};

// Largest double below 1, smallest positive normal. S(X) can round to the
// closed endpoints for |x| beyond ~6 (upper) or ~27 (lower).
inline constexpr double kBelowOne = 1.0 - 0x1.0p-53;
inline constexpr double kAboveZero = std::numeric_limits<double>::min();

inline double bounded_from_shadow(double x) {
  return std::clamp(transform_S(x), kAboveZero, kBelowOne);
}

/// Exact one-step transitions. `z` is a standard normal draw.
namespace transition {

inline double brownian_drift(double y, double mu, double sigma, double dt,
                             double z) {
  return y + mu * dt + sigma * std::sqrt(dt) * z;
}

/// X_{t+dt} | X_t ~ N(X_t e^{sigma^2 dt}, (e^{2 sigma^2 dt} - 1) / 2).
inline double shadow(double x, double sigma, double dt, double z) {
  const double a = sigma * sigma * dt;
  return x * std::exp(a) + std::sqrt(0.5 * std::expm1(2.0 * a)) * z;
}

/// Standard deviation of the shadow transition over dt.
inline double shadow_sd(double sigma, double dt) {
  return std::sqrt(0.5 * std::expm1(2.0 * sigma * sigma * dt));
}

}  // namespace transition

namespace detail {

inline void require_kind(const ProcessSpec& spec, ProcessKind kind,
                         const char* who) {
  if (spec.kind != kind) {
    throw SpecError(std::string(who) + ": process kind is " +
                    std::string(to_string(spec.kind)) + ", expected " +
                    std::string(to_string(kind)));
  }
  spec.validate();
}

inline Path empty_path(const ProcessSpec& spec, std::uint64_t seed,
                       std::uint64_t path_index) {
  Path path;
  path.kind = spec.kind;
  path.grid = spec.horizon;
  path.seed = seed;
  path.path_index = path_index;
  path.values.resize(spec.horizon.size());
  path.values[0] = spec.y0;
  return path;
}

inline double walk_step(double y, double step, bool up, std::size_t& clamps) {
  const double next = up ? y + step : y - step;
  const double lo = step;
  const double hi = 1.0 - step;
  if (next < lo || next > hi) {
    ++clamps;
    return std::clamp(next, lo, hi);
  }
  return next;
}

}  // namespace detail

/// Brownian motion with drift, sampled with its exact Gaussian transition.
inline Path simulate_brownian_drift(const ProcessSpec& spec, std::uint64_t seed,
                                    std::uint64_t path_index) {
  detail::require_kind(spec, ProcessKind::BrownianDrift, "simulate_brownian_drift");
  Path path = detail::empty_path(spec, seed, path_index);
  RandomStream rng(seed, path_index);
  const auto& grid = spec.horizon;
  for (std::size_t k = 0; k < grid.n_steps(); ++k) {
    const double dt = grid[k + 1] - grid[k];
    path.values[k + 1] = transition::brownian_drift(path.values[k], spec.mu,
                                                    spec.sigma, dt, rng.normal());
  }
  return path;
}

/// Symmetric +/- step walk, one step per grid interval.
inline Path simulate_random_walk(const ProcessSpec& spec, std::uint64_t seed,
                                 std::uint64_t path_index) {
  detail::require_kind(spec, ProcessKind::RandomWalk, "simulate_random_walk");
  Path path = detail::empty_path(spec, seed, path_index);
  RandomStream rng(seed, path_index);
  for (std::size_t k = 0; k < spec.horizon.n_steps(); ++k) {
    path.values[k + 1] =
        detail::walk_step(path.values[k], spec.step, rng.bit(), path.clamp_events);
  }
  return path;
}

/// Shadow process dX = sigma^2 X dt + sigma dW via its exact transition.
inline Path simulate_shadow(const ProcessSpec& spec, std::uint64_t seed,
                            std::uint64_t path_index) {
  detail::require_kind(spec, ProcessKind::ShadowX, "simulate_shadow");
  Path path = detail::empty_path(spec, seed, path_index);
  RandomStream rng(seed, path_index);
  const auto& grid = spec.horizon;
  for (std::size_t k = 0; k < grid.n_steps(); ++k) {
    const double dt = grid[k + 1] - grid[k];
    path.values[k + 1] =
        transition::shadow(path.values[k], spec.sigma, dt, rng.normal());
  }
  return path;
}

/// Y = S(X) with X the shadow process started at S^{-1}(y0).
inline Path simulate_bounded_y(const ProcessSpec& spec, std::uint64_t seed,
                               std::uint64_t path_index) {
  detail::require_kind(spec, ProcessKind::BoundedY, "simulate_bounded_y");
  ProcessSpec shadow_spec = spec;
  shadow_spec.kind = ProcessKind::ShadowX;
  shadow_spec.y0 = transform_S_inverse(spec.y0);
  shadow_spec.threshold = transform_S_inverse(spec.threshold);
  Path path = simulate_shadow(shadow_spec, seed, path_index);
  path.kind = ProcessKind::BoundedY;
  path.values[0] = spec.y0;
  for (std::size_t k = 1; k < path.values.size(); ++k) {
    path.values[k] = bounded_from_shadow(path.values[k]);
  }
  return path;
}

/// Dispatch on spec.kind.
inline Path simulate(const ProcessSpec& spec, std::uint64_t seed,
                     std::uint64_t path_index) {
  switch (spec.kind) {
    case ProcessKind::BrownianDrift: return simulate_brownian_drift(spec, seed, path_index);
    case ProcessKind::RandomWalk: return simulate_random_walk(spec, seed, path_index);
    case ProcessKind::ShadowX: return simulate_shadow(spec, seed, path_index);
    case ProcessKind::BoundedY: return simulate_bounded_y(spec, seed, path_index);
  }
  throw SpecError("simulate: unknown process kind");
}

/// Draws the state at time `to` given `value` at time `from`, using a single
/// exact transition (RandomWalk: one step per elapsed day). The processes are
/// Markov, so this is the conditional law given the whole history.
inline double propagate(const ProcessSpec& spec, double value, double from,
                        double to, RandomStream& rng) {
  if (!(to >= from)) throw SpecError("propagate: requires to >= from");
  const double dt = to - from;
  if (dt == 0.0) return value;
  switch (spec.kind) {
    case ProcessKind::BrownianDrift:
      return transition::brownian_drift(value, spec.mu, spec.sigma, dt, rng.normal());
    case ProcessKind::ShadowX:
      return transition::shadow(value, spec.sigma, dt, rng.normal());
    case ProcessKind::BoundedY:
      return bounded_from_shadow(transition::shadow(
          transform_S_inverse(value), spec.sigma, dt, rng.normal()));
    case ProcessKind::RandomWalk: {
      const auto days = static_cast<long long>(std::llround(dt * kDaysPerYear));
      std::size_t clamps = 0;
      for (long long d = 0; d < days; ++d) {
        value = detail::walk_step(value, spec.step, rng.bit(), clamps);
      }
      return value;
    }
  }
  throw SpecError("propagate: unknown process kind");
}

}  // namespace efmart

#endif  // EFMART_SDE_HPP_
