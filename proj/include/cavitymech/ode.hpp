// Copyright 2026 The cavitymech Authors
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

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "cavitymech/types.hpp"

namespace cavitymech {

struct OdeOptions {
  double rel_tol = 1e-11;
  double abs_tol = 1e-14;
  double initial_step = 0;  // 0: choose automatically
  long max_steps = 100000000;
};

namespace detail {

// Dormand-Prince 5(4) coefficients.
inline constexpr double dp_c2 = 1.0 / 5, dp_c3 = 3.0 / 10, dp_c4 = 4.0 / 5,
                        dp_c5 = 8.0 / 9;
inline constexpr double dp_a21 = 1.0 / 5;
inline constexpr double dp_a31 = 3.0 / 40, dp_a32 = 9.0 / 40;
inline constexpr double dp_a41 = 44.0 / 45, dp_a42 = -56.0 / 15, dp_a43 = 32.0 / 9;
inline constexpr double dp_a51 = 19372.0 / 6561, dp_a52 = -25360.0 / 2187,
                        dp_a53 = 64448.0 / 6561, dp_a54 = -212.0 / 729;
inline constexpr double dp_a61 = 9017.0 / 3168, dp_a62 = -355.0 / 33,
                        dp_a63 = 46732.0 / 5247, dp_a64 = 49.0 / 176,
                        dp_a65 = -5103.0 / 18656;
inline constexpr double dp_b1 = 35.0 / 384, dp_b3 = 500.0 / 1113,
                        dp_b4 = 125.0 / 192, dp_b5 = -2187.0 / 6784,
                        dp_b6 = 11.0 / 84;
// 5th-order minus embedded 4th-order weights (error estimator).
inline constexpr double dp_e1 = 71.0 / 57600, dp_e3 = -71.0 / 16695,
                        dp_e4 = 71.0 / 1920, dp_e5 = -17253.0 / 339200,
                        dp_e6 = 22.0 / 525, dp_e7 = -1.0 / 40;

}  // namespace detail

// Integrates y' = rhs(t, y) from t_grid.front() to t_grid.back() with the
// adaptive Dormand-Prince 5(4) pair, landing exactly on every grid point.
//
// State: any Eigen dense vector/matrix type. rhs(t, y, dy) writes the
// derivative. on_accept(t, y), if provided, may adjust the state after each
// accepted step (e.g. re-symmetrize a covariance) and is also the hook for
// validity checks that should abort the integration.
//
// Returns the states at the grid points; the first entry is state0 itself.
template <typename State, typename Rhs,
          typename Accept = std::function<void(double, State&)>>
std::vector<State> integrate(Rhs&& rhs, const State& state0,
                             const std::vector<double>& t_grid,
                             const OdeOptions& opt = {},
                             Accept&& on_accept = {}) {
  if (t_grid.empty()) throw ConfigError("integrate: empty time grid");
  for (size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw ConfigError("integrate: time grid must be strictly increasing");

  std::vector<State> out;
  out.reserve(t_grid.size());
  out.push_back(state0);
  if (t_grid.size() == 1) return out;

  const double t_begin = t_grid.front(), t_end = t_grid.back();
  const double span = t_end - t_begin;

  State y = state0;
  State k1 = state0, k2 = state0, k3 = state0, k4 = state0, k5 = state0,
        k6 = state0, k7 = state0, y5 = state0, err = state0;

  double t = t_begin;
  rhs(t, y, k1);

  auto error_norm = [&](const State& y_old, const State& y_new, const State& e) {
    const auto ay0 = y_old.cwiseAbs();
    const auto ay1 = y_new.cwiseAbs();
    const auto scale = (opt.abs_tol + opt.rel_tol * ay0.cwiseMax(ay1).array());
    return std::sqrt((e.cwiseAbs().array() / scale).square().mean());
  };

  double h = opt.initial_step;
  if (h <= 0) {
    // Conservative first step from the initial derivative magnitude.
    const double d0 = y.norm(), d1 = k1.norm();
    h = (d1 > 0) ? 0.01 * std::max(d0, opt.abs_tol) / d1 : span * 1e-6;
    h = std::min(h, span / 10);
    if (!(h > 0)) h = span * 1e-6;
  }

  size_t next = 1;
  long steps = 0;
  const double h_floor = span * 1e-14;

  while (next < t_grid.size()) {
    if (++steps > opt.max_steps)
      throw NumericalError("integrate: exceeded maximum step count");
    bool hit_grid = false;
    if (t + h >= t_grid[next]) {
      h = t_grid[next] - t;
      hit_grid = true;
    }
    if (h < h_floor)
      throw NumericalError(
          "integrate: step size underflow (stiff system; for driven-cavity "
          "models consider the rotating-wave form, rwa=true)");

    y5 = y + (h * detail::dp_a21) * k1;
    rhs(t + detail::dp_c2 * h, y5, k2);
    y5 = y + h * (detail::dp_a31 * k1 + detail::dp_a32 * k2);
    rhs(t + detail::dp_c3 * h, y5, k3);
    y5 = y + h * (detail::dp_a41 * k1 + detail::dp_a42 * k2 + detail::dp_a43 * k3);
    rhs(t + detail::dp_c4 * h, y5, k4);
    y5 = y + h * (detail::dp_a51 * k1 + detail::dp_a52 * k2 +
                  detail::dp_a53 * k3 + detail::dp_a54 * k4);
    rhs(t + detail::dp_c5 * h, y5, k5);
    y5 = y + h * (detail::dp_a61 * k1 + detail::dp_a62 * k2 +
                  detail::dp_a63 * k3 + detail::dp_a64 * k4 + detail::dp_a65 * k5);
    rhs(t + h, y5, k6);
    y5 = y + h * (detail::dp_b1 * k1 + detail::dp_b3 * k3 + detail::dp_b4 * k4 +
                  detail::dp_b5 * k5 + detail::dp_b6 * k6);
    rhs(t + h, y5, k7);  // FSAL stage

    err = h * (detail::dp_e1 * k1 + detail::dp_e3 * k3 + detail::dp_e4 * k4 +
               detail::dp_e5 * k5 + detail::dp_e6 * k6 + detail::dp_e7 * k7);
    const double en = error_norm(y, y5, err);

    if (en <= 1.0) {
      t += h;
      y.swap(y5);
      k1.swap(k7);
      if constexpr (!std::is_same_v<std::decay_t<Accept>,
                                    std::function<void(double, State&)>>) {
        on_accept(t, y);
        rhs(t, y, k1);  // state may have been adjusted; refresh FSAL stage
      } else if (on_accept) {
        on_accept(t, y);
        rhs(t, y, k1);
      }
      if (hit_grid && t >= t_grid[next] - h_floor) {
        out.push_back(y);
        ++next;
      }
    }

    const double factor =
        (en > 0) ? std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0) : 5.0;
    h = std::min(h * factor, span);
  }
  return out;
}

}  // namespace cavitymech
