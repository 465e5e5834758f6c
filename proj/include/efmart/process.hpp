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

#ifndef EFMART_PROCESS_HPP_
#define EFMART_PROCESS_HPP_

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "efmart/errors.hpp"
#include "efmart/time_grid.hpp"

namespace efmart {

enum class ProcessKind {
  BrownianDrift,  // dY = mu dt + sigma dW
  RandomWalk,     // daily +/- step, clamped inside (0, 1)
  ShadowX,        // dX = sigma^2 X dt + sigma dW
  BoundedY,       // Y = S(X), a martingale on (0, 1)
};

constexpr std::string_view to_string(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::BrownianDrift: return "brownian";
    case ProcessKind::RandomWalk: return "random-walk";
    case ProcessKind::ShadowX: return "shadow";
    case ProcessKind::BoundedY: return "bounded";
  }
  return "unknown";
}

inline std::optional<ProcessKind> parse_process_kind(std::string_view name) {
  for (auto kind : {ProcessKind::BrownianDrift, ProcessKind::RandomWalk,
                    ProcessKind::ShadowX, ProcessKind::BoundedY}) {
    if (name == to_string(kind)) return kind;
  }
  return std::nullopt;
}

/// Default daily move of the random-walk vote share (0.01%).
inline constexpr double kDefaultWalkStep = 1e-4;

/// Parameters of one stochastic model. `threshold` lives in the value space
/// of the process (vote share for RandomWalk/BoundedY, x for ShadowX).
struct ProcessSpec {
  ProcessKind kind = ProcessKind::BrownianDrift;
  double mu = 0.0;
  double sigma = 1.0;
  double y0 = 0.0;
  double step = kDefaultWalkStep;
  double threshold = 0.0;
  TimeGrid horizon{0.0, 1.0, 1};

  /// Throws SpecError naming the offending field.
  void validate() const {
    auto finite = [](double v, const char* name) {
      if (!std::isfinite(v)) {
        throw SpecError(std::string("ProcessSpec: ") + name + " must be finite");
      }
    };
    finite(mu, "mu");
    finite(sigma, "sigma");
    finite(y0, "y0");
    finite(threshold, "threshold");
    if (sigma < 0.0) throw SpecError("ProcessSpec: sigma must be >= 0");
    if (kind == ProcessKind::RandomWalk || kind == ProcessKind::BoundedY) {
      if (!(y0 > 0.0 && y0 < 1.0)) {
        throw SpecError("ProcessSpec: y0 must lie in (0, 1) for " +
                        std::string(to_string(kind)));
      }
      if (!(threshold > 0.0 && threshold < 1.0)) {
        throw SpecError("ProcessSpec: threshold must lie in (0, 1) for " +
                        std::string(to_string(kind)));
      }
    }
    if (kind == ProcessKind::RandomWalk) {
      finite(step, "step");
      if (step < 0.0 || step >= 0.5) {
        throw SpecError("ProcessSpec: step must lie in [0, 0.5)");
      }
    }
  }

  static ProcessSpec brownian_drift(double mu, double sigma, double y0,
                                    double threshold, TimeGrid horizon) {
    return {ProcessKind::BrownianDrift, mu, sigma, y0, 0.0, threshold, horizon};
  }
  static ProcessSpec random_walk(double step, double y0, double threshold,
                                 std::size_t days) {
    return {ProcessKind::RandomWalk, 0.0, 0.0,       y0,
            step,                    threshold, TimeGrid::daily(days)};
  }
  static ProcessSpec shadow(double sigma, double x0, double x_threshold,
                            TimeGrid horizon) {
    return {ProcessKind::ShadowX, 0.0, sigma, x0, 0.0, x_threshold, horizon};
  }
  static ProcessSpec bounded(double sigma, double y0, double threshold,
                             TimeGrid horizon) {
    return {ProcessKind::BoundedY, 0.0, sigma, y0, 0.0, threshold, horizon};
  }
};

}  // namespace efmart

#endif  // EFMART_PROCESS_HPP_
