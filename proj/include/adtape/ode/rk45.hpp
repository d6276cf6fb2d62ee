// Licensed under the Apache License, Version 2.0 (the "License"); you
// may not use this file except in compliance with the License.  You
// may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied.  See the License for the specific language governing
// permissions and limitations under the License.

#ifndef ADTAPE_ODE_RK45_HPP
#define ADTAPE_ODE_RK45_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace adtape {

struct Rk45Options {
  double rtol = 1e-10;
  double atol = 1e-10;
  int max_steps = 100000;  // per solution interval
};

namespace detail {

// Dormand-Prince 5(4) tableau.
inline constexpr double dp_c2 = 1.0 / 5.0, dp_c3 = 3.0 / 10.0, dp_c4 = 4.0 / 5.0,
                        dp_c5 = 8.0 / 9.0;
inline constexpr double dp_a21 = 1.0 / 5.0;
inline constexpr double dp_a31 = 3.0 / 40.0, dp_a32 = 9.0 / 40.0;
inline constexpr double dp_a41 = 44.0 / 45.0, dp_a42 = -56.0 / 15.0, dp_a43 = 32.0 / 9.0;
inline constexpr double dp_a51 = 19372.0 / 6561.0, dp_a52 = -25360.0 / 2187.0,
                        dp_a53 = 64448.0 / 6561.0, dp_a54 = -212.0 / 729.0;
inline constexpr double dp_a61 = 9017.0 / 3168.0, dp_a62 = -355.0 / 33.0,
                        dp_a63 = 46732.0 / 5247.0, dp_a64 = 49.0 / 176.0,
                        dp_a65 = -5103.0 / 18656.0;
inline constexpr double dp_b1 = 35.0 / 384.0, dp_b3 = 500.0 / 1113.0,
                        dp_b4 = 125.0 / 192.0, dp_b5 = -2187.0 / 6784.0,
                        dp_b6 = 11.0 / 84.0;
inline constexpr double dp_e1 = 71.0 / 57600.0, dp_e3 = -71.0 / 16695.0,
                        dp_e4 = 71.0 / 1920.0, dp_e5 = -17253.0 / 339200.0,
                        dp_e6 = 22.0 / 525.0, dp_e7 = -1.0 / 40.0;

inline void check_solution_times(double t0, const std::vector<double>& ts) {
  if (ts.empty())
    throw std::invalid_argument("adtape: no solution times requested");
  double prev = t0;
  for (double t : ts) {
    if (!(t > prev))
      throw std::invalid_argument(
          "adtape: solution times must be strictly ascending and after the initial time");
    prev = t;
  }
}

}  // namespace detail

/// Adaptive Dormand-Prince 5(4) integration of a plain-valued system
/// dy/dt = rhs(t, y), reporting the state at each requested time.  Steps are
/// controlled so the embedded error estimate satisfies
/// |err_i| <= atol + rtol * |y_i| componentwise (in RMS); the last step of
/// each interval is shortened to land exactly on the requested time.
///
/// rhs has signature void(double t, const std::vector<double>& y,
/// std::vector<double>& dydt).  Throws on non-finite derivatives and when an
/// interval exceeds max_steps.
template <typename Rhs>
std::vector<std::vector<double>> rk45_integrate(Rhs&& rhs, std::vector<double> y,
                                                double t0,
                                                const std::vector<double>& ts,
                                                const Rk45Options& opt = {}) {
  detail::check_solution_times(t0, ts);
  const std::size_t n = y.size();

  auto eval = [&](double t, const std::vector<double>& state, std::vector<double>& out) {
    rhs(t, state, out);
    for (double d : out)
      if (!std::isfinite(d))
        throw std::runtime_error("adtape: ODE right-hand side returned a non-finite value");
  };

  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  std::vector<double> y_stage(n), y_new(n), err(n);

  double t = t0;
  eval(t, y, k1);

  // Initial step size from the usual two-estimate heuristic: an explicit
  // Euler probe bounds the second derivative, and the step is sized so
  // h^5 * max(|f|, |f'|) is small against the tolerance scale.
  double h;
  {
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sk = opt.atol + opt.rtol * std::fabs(y[i]);
      d0 += (y[i] / sk) * (y[i] / sk);
      d1 += (k1[i] / sk) * (k1[i] / sk);
    }
    d0 = std::sqrt(d0 / static_cast<double>(n));
    d1 = std::sqrt(d1 / static_cast<double>(n));
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * (d0 / d1);
    h0 = std::min(h0, ts.front() - t0);
    for (std::size_t i = 0; i < n; ++i) y_stage[i] = y[i] + h0 * k1[i];
    eval(t + h0, y_stage, k2);
    double d2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sk = opt.atol + opt.rtol * std::fabs(y[i]);
      d2 += ((k2[i] - k1[i]) / sk) * ((k2[i] - k1[i]) / sk);
    }
    d2 = std::sqrt(d2 / static_cast<double>(n)) / h0;
    const double d12 = std::max(d1, d2);
    const double h1 = d12 <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                   : std::pow(0.01 / d12, 1.0 / 5.0);
    h = std::min(std::min(100.0 * h0, h1), ts.front() - t0);
  }

  std::vector<std::vector<double>> out;
  out.reserve(ts.size());

  for (double t_target : ts) {
    int steps = 0;
    while (t < t_target) {
      if (++steps > opt.max_steps)
        throw std::runtime_error("adtape: ODE integration exceeded max_steps");
      bool last = false;
      if (t + h >= t_target) {
        h = t_target - t;
        last = true;
      }

      for (std::size_t i = 0; i < n; ++i)
        y_stage[i] = y[i] + h * detail::dp_a21 * k1[i];
      eval(t + detail::dp_c2 * h, y_stage, k2);
      for (std::size_t i = 0; i < n; ++i)
        y_stage[i] = y[i] + h * (detail::dp_a31 * k1[i] + detail::dp_a32 * k2[i]);
      eval(t + detail::dp_c3 * h, y_stage, k3);
      for (std::size_t i = 0; i < n; ++i)
        y_stage[i] = y[i] + h * (detail::dp_a41 * k1[i] + detail::dp_a42 * k2[i] +
                                 detail::dp_a43 * k3[i]);
      eval(t + detail::dp_c4 * h, y_stage, k4);
      for (std::size_t i = 0; i < n; ++i)
        y_stage[i] = y[i] + h * (detail::dp_a51 * k1[i] + detail::dp_a52 * k2[i] +
                                 detail::dp_a53 * k3[i] + detail::dp_a54 * k4[i]);
      eval(t + detail::dp_c5 * h, y_stage, k5);
      for (std::size_t i = 0; i < n; ++i)
        y_stage[i] = y[i] + h * (detail::dp_a61 * k1[i] + detail::dp_a62 * k2[i] +
                                 detail::dp_a63 * k3[i] + detail::dp_a64 * k4[i] +
                                 detail::dp_a65 * k5[i]);
      eval(t + h, y_stage, k6);
      for (std::size_t i = 0; i < n; ++i)
        y_new[i] = y[i] + h * (detail::dp_b1 * k1[i] + detail::dp_b3 * k3[i] +
                               detail::dp_b4 * k4[i] + detail::dp_b5 * k5[i] +
                               detail::dp_b6 * k6[i]);
      eval(t + h, y_new, k7);

      double err_norm = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double e = h * (detail::dp_e1 * k1[i] + detail::dp_e3 * k3[i] +
                              detail::dp_e4 * k4[i] + detail::dp_e5 * k5[i] +
                              detail::dp_e6 * k6[i] + detail::dp_e7 * k7[i]);
        const double sk =
            opt.atol + opt.rtol * std::max(std::fabs(y[i]), std::fabs(y_new[i]));
        err_norm += (e / sk) * (e / sk);
      }
      err_norm = std::sqrt(err_norm / static_cast<double>(n));

      if (err_norm <= 1.0) {
        t = last ? t_target : t + h;
        y.swap(y_new);
        k1.swap(k7);  // first stage of the next step equals the last of this one
        const double grow =
            err_norm == 0.0 ? 10.0
                            : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 10.0);
        h *= grow;
      } else {
        h *= std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 1.0);
        if (!(h > 0.0) || t + h == t)
          throw std::runtime_error("adtape: ODE step size underflow");
      }
    }
    out.push_back(y);
  }
  return out;
}

}  // namespace adtape

#endif  // ADTAPE_ODE_RK45_HPP
