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

#ifndef EFMART_TIME_GRID_HPP_
#define EFMART_TIME_GRID_HPP_

#include <cmath>
#include <cstddef>
#include <vector>

#include "efmart/errors.hpp"

namespace efmart {

/// Days per year for daily grids. Continuous-time parameters are annual.
inline constexpr double kDaysPerYear = 365.0;

/// Uniform time grid t0 < t1 < ... < tn = T, in years.
///
/// Points are computed by index, never by accumulation, and the last point
/// is T exactly.
class TimeGrid {
 public:
  TimeGrid(double t0, double T, std::size_t n_steps)
      : t0_(t0), T_(T), n_steps_(n_steps) {
    if (!std::isfinite(t0) || !std::isfinite(T) || !(T > t0)) {
      throw SpecError("TimeGrid: horizon T must exceed t0");
    }
    if (n_steps == 0) throw SpecError("TimeGrid: n_steps must be >= 1");
  }

  /// Daily grid over `days` days starting at zero.
  static TimeGrid daily(std::size_t days) {
    return TimeGrid(0.0, static_cast<double>(days) / kDaysPerYear, days);
  }

  double t0() const { return t0_; }
  double T() const { return T_; }
  std::size_t n_steps() const { return n_steps_; }
  std::size_t size() const { return n_steps_ + 1; }
  double dt() const { return (T_ - t0_) / static_cast<double>(n_steps_); }

  double operator[](std::size_t k) const {
    if (k >= n_steps_) return T_;
    return t0_ + (T_ - t0_) * (static_cast<double>(k) /
                               static_cast<double>(n_steps_));
  }

  std::vector<double> points() const {
    std::vector<double> out(size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = (*this)[k];
    return out;
  }

  /// Index of the grid point equal to `t` (within rounding), or size() if
  /// `t` is not on the grid.
  std::size_t index_of(double t) const {
    const double pos = (t - t0_) / dt();
    const double k = std::round(pos);
    if (k < 0.0 || k > static_cast<double>(n_steps_) ||
        std::abs(pos - k) > 1e-9) {
      return size();
    }
    return static_cast<std::size_t>(k);
  }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double t0_;
  double T_;
  std::size_t n_steps_;
};

}  // namespace efmart

#endif  // EFMART_TIME_GRID_HPP_
