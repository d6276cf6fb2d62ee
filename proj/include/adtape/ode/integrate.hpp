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

#ifndef ADTAPE_ODE_INTEGRATE_HPP
#define ADTAPE_ODE_INTEGRATE_HPP

#include <vector>

#include "adtape/functions/reductions.hpp"
#include "adtape/ode/coupled.hpp"
#include "adtape/ode/rk45.hpp"
#include "adtape/prob/operands_partials.hpp"

namespace adtape {

/// One requested solution time with the state at that time.  When anything
/// was differentiated each state is a precomputed-gradients node over the
/// differentiated inputs, with the integrated sensitivities as partials.
template <typename T>
struct SolutionPoint {
  double t = 0.0;
  std::vector<T> y;
};

namespace detail {

template <typename Coupled>
std::vector<std::vector<double>> integrate_coupled(const Coupled& coupled,
                                                   const std::vector<double>& y0,
                                                   double t0,
                                                   const std::vector<double>& ts,
                                                   const Rk45Options& opt) {
  return rk45_integrate([&coupled](double t, const std::vector<double>& s,
                                   std::vector<double>& ds) { coupled(t, s, ds); },
                        coupled.initial_state(y0), t0, ts, opt);
}

inline std::vector<double> values_of(const std::vector<Var>& xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (const Var& x : xs) out.push_back(x.val());
  return out;
}

}  // namespace detail

/// Nothing differentiated: plain integration of the base system.
template <typename System>
std::vector<SolutionPoint<double>> integrate_ode(const System& sys,
                                                 const std::vector<double>& y0,
                                                 double t0,
                                                 const std::vector<double>& ts,
                                                 const std::vector<double>& theta,
                                                 const Rk45Options& opt = {}) {
  auto states = rk45_integrate(
      [&](double t, const std::vector<double>& y, std::vector<double>& dydt) {
        dydt = sys(t, y, theta);
      },
      y0, t0, ts, opt);
  std::vector<SolutionPoint<double>> out;
  out.reserve(ts.size());
  for (std::size_t j = 0; j < ts.size(); ++j)
    out.push_back({ts[j], std::move(states[j])});
  return out;
}

/// Differentiating with respect to the parameters: integrates the coupled
/// system of size N(K+1) on plain values, then ties each output state to the
/// parameter variables through its sensitivity row.
template <typename System>
std::vector<SolutionPoint<Var>> integrate_ode(const System& sys,
                                              const std::vector<double>& y0, double t0,
                                              const std::vector<double>& ts,
                                              const std::vector<Var>& theta,
                                              const Rk45Options& opt = {}) {
  Tape& tape = find_tape(theta);
  const std::size_t n = y0.size();
  const std::size_t k = theta.size();
  CoupledParams<System> coupled(tape, sys, detail::values_of(theta), n);
  const auto states = detail::integrate_coupled(coupled, y0, t0, ts, opt);

  std::vector<SolutionPoint<Var>> out;
  out.reserve(ts.size());
  std::vector<double> partials(k);
  for (std::size_t j = 0; j < ts.size(); ++j) {
    SolutionPoint<Var> pt{ts[j], {}};
    pt.y.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t m = 0; m < k; ++m) partials[m] = states[j][n + m * n + i];
      pt.y.push_back(precomputed(tape, states[j][i], theta, partials));
    }
    out.push_back(std::move(pt));
  }
  return out;
}

/// Differentiating with respect to the initial state: coupled size N(N+1).
template <typename System>
std::vector<SolutionPoint<Var>> integrate_ode(const System& sys,
                                              const std::vector<Var>& y0, double t0,
                                              const std::vector<double>& ts,
                                              const std::vector<double>& theta,
                                              const Rk45Options& opt = {}) {
  Tape& tape = find_tape(y0);
  const std::size_t n = y0.size();
  CoupledInitials<System> coupled(tape, sys, theta, n);
  const auto states = detail::integrate_coupled(coupled, detail::values_of(y0), t0, ts, opt);

  std::vector<SolutionPoint<Var>> out;
  out.reserve(ts.size());
  std::vector<double> partials(n);
  for (std::size_t j = 0; j < ts.size(); ++j) {
    SolutionPoint<Var> pt{ts[j], {}};
    pt.y.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < n; ++c) partials[c] = states[j][n + c * n + i];
      pt.y.push_back(precomputed(tape, states[j][i], y0, partials));
    }
    out.push_back(std::move(pt));
  }
  return out;
}

/// Differentiating with respect to both: coupled size N(N+K+1); each output
/// state carries N+K partials, the parameter block first.
template <typename System>
std::vector<SolutionPoint<Var>> integrate_ode(const System& sys,
                                              const std::vector<Var>& y0, double t0,
                                              const std::vector<double>& ts,
                                              const std::vector<Var>& theta,
                                              const Rk45Options& opt = {}) {
  Tape& tape = find_tape(y0, theta);
  const std::size_t n = y0.size();
  const std::size_t k = theta.size();
  CoupledBoth<System> coupled(tape, sys, detail::values_of(theta), n);
  const auto states = detail::integrate_coupled(coupled, detail::values_of(y0), t0, ts, opt);

  std::vector<Var> inputs;
  inputs.reserve(k + n);
  inputs.insert(inputs.end(), theta.begin(), theta.end());
  inputs.insert(inputs.end(), y0.begin(), y0.end());

  std::vector<SolutionPoint<Var>> out;
  out.reserve(ts.size());
  std::vector<double> partials(k + n);
  for (std::size_t j = 0; j < ts.size(); ++j) {
    SolutionPoint<Var> pt{ts[j], {}};
    pt.y.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t m = 0; m < k; ++m) partials[m] = states[j][n + m * n + i];
      for (std::size_t c = 0; c < n; ++c)
        partials[k + c] = states[j][n + k * n + c * n + i];
      pt.y.push_back(precomputed(tape, states[j][i], inputs, partials));
    }
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace adtape

#endif  // ADTAPE_ODE_INTEGRATE_HPP
