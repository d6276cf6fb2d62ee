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

#ifndef ADTAPE_ODE_COUPLED_HPP
#define ADTAPE_ODE_COUPLED_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "adtape/core/sweep.hpp"
#include "adtape/core/var.hpp"

namespace adtape {

/// Value and Jacobians of an ODE system function at one point.
/// df_dy is N x N row-major (entry (n, j) = df_n/dy_j); df_dtheta is N x K.
struct RhsJacobians {
  std::vector<double> f;
  std::vector<double> df_dy;
  std::vector<double> df_dtheta;

  std::size_t state_dim = 0;
  std::size_t param_dim = 0;

  double dy(std::size_t n, std::size_t j) const { return df_dy[n * state_dim + j]; }
  double dtheta(std::size_t n, std::size_t k) const {
    return df_dtheta[n * param_dim + k];
  }
};

namespace detail {

/// Unwinds a nested recording episode even when the system function throws.
struct TapeEpisode {
  Tape& tape;
  TapeMark mark;

  explicit TapeEpisode(Tape& t) : tape(t), mark(t.mark()) {}
  ~TapeEpisode() { tape.truncate_to(mark); }

  TapeEpisode(const TapeEpisode&) = delete;
  TapeEpisode& operator=(const TapeEpisode&) = delete;
};

}  // namespace detail

/// Jacobians of f(t, y, theta) with respect to y and theta, computed by
/// nested reverse sweeps: the current tape extent is marked, the system is
/// recorded above the mark, one sweep per output runs down to the mark only,
/// and the episode is truncated away.  The ambient tape's length and the
/// adjoints below the mark are exactly as before the call, so this can run in
/// the middle of an enclosing differentiation.
template <typename System>
RhsJacobians jacobians_of_rhs(Tape& tape, const System& sys, double t,
                              const std::vector<double>& y,
                              const std::vector<double>& theta) {
  const std::size_t n = y.size();
  const std::size_t k = theta.size();
  RhsJacobians jac;
  jac.state_dim = n;
  jac.param_dim = k;
  jac.f.resize(n);
  jac.df_dy.resize(n * n);
  jac.df_dtheta.resize(n * k);

  detail::TapeEpisode episode(tape);
  ScopedTape active(tape);

  std::vector<Var> y_var;
  y_var.reserve(n);
  for (double v : y) y_var.push_back(independent(tape, v));
  std::vector<Var> theta_var;
  theta_var.reserve(k);
  for (double v : theta) theta_var.push_back(independent(tape, v));

  std::vector<Var> f_var = sys(t, y_var, theta_var);
  if (f_var.size() != n)
    throw std::invalid_argument("adtape: ODE system output size differs from state size");

  for (std::size_t i = 0; i < n; ++i) {
    jac.f[i] = f_var[i].val();
    if (i > 0) zero_adjoints(tape, episode.mark);
    sweep(tape, f_var[i].node(), episode.mark);
    for (std::size_t j = 0; j < n; ++j) jac.df_dy[i * n + j] = y_var[j].adj();
    for (std::size_t m = 0; m < k; ++m) jac.df_dtheta[i * k + m] = theta_var[m].adj();
  }
  return jac;
}

/// Base system coupled with sensitivity states d(y)/d(theta), one block of N
/// states per parameter: state layout [y | z_1 | ... | z_K] with
/// z_m = dy/dtheta_m.  Sensitivities start at zero.  Each evaluation makes
/// one nested Jacobian episode shared by every sensitivity column.
template <typename System>
class CoupledParams {
 public:
  CoupledParams(Tape& tape, const System& sys, std::vector<double> theta,
                std::size_t state_dim)
      : tape_(&tape), sys_(&sys), theta_(std::move(theta)), n_(state_dim) {}

  std::size_t size() const { return n_ * (theta_.size() + 1); }

  std::vector<double> initial_state(const std::vector<double>& y0) const {
    std::vector<double> state(size(), 0.0);
    for (std::size_t i = 0; i < n_; ++i) state[i] = y0[i];
    return state;
  }

  void operator()(double t, const std::vector<double>& state,
                  std::vector<double>& dstate) const {
    const std::size_t k = theta_.size();
    const std::vector<double> y(state.begin(), state.begin() + n_);
    const RhsJacobians jac = jacobians_of_rhs(*tape_, *sys_, t, y, theta_);
    dstate.resize(size());
    for (std::size_t i = 0; i < n_; ++i) dstate[i] = jac.f[i];
    // d/dt z_{n,m} = df_n/dtheta_m + sum_j z_{j,m} df_n/dy_j
    for (std::size_t m = 0; m < k; ++m)
      for (std::size_t i = 0; i < n_; ++i) {
        double d = jac.dtheta(i, m);
        for (std::size_t j = 0; j < n_; ++j)
          d += state[n_ + m * n_ + j] * jac.dy(i, j);
        dstate[n_ + m * n_ + i] = d;
      }
  }

 private:
  Tape* tape_;
  const System* sys_;
  std::vector<double> theta_;
  std::size_t n_;
};

/// Base system coupled with sensitivities to the initial state: layout
/// [y | w_1 | ... | w_N] with w_k = dy/dxi_k.  The sensitivity matrix is
/// integrated directly from the identity seed W(0) = I with
/// dW/dt = (df/dy) W; the Kronecker delta in the derivation is exactly this
/// seed.
template <typename System>
class CoupledInitials {
 public:
  CoupledInitials(Tape& tape, const System& sys, std::vector<double> theta,
                  std::size_t state_dim)
      : tape_(&tape), sys_(&sys), theta_(std::move(theta)), n_(state_dim) {}

  std::size_t size() const { return n_ * (n_ + 1); }

  std::vector<double> initial_state(const std::vector<double>& y0) const {
    std::vector<double> state(size(), 0.0);
    for (std::size_t i = 0; i < n_; ++i) state[i] = y0[i];
    for (std::size_t k = 0; k < n_; ++k) state[n_ + k * n_ + k] = 1.0;
    return state;
  }

  void operator()(double t, const std::vector<double>& state,
                  std::vector<double>& dstate) const {
    const std::vector<double> y(state.begin(), state.begin() + n_);
    const RhsJacobians jac = jacobians_of_rhs(*tape_, *sys_, t, y, theta_);
    dstate.resize(size());
    for (std::size_t i = 0; i < n_; ++i) dstate[i] = jac.f[i];
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t i = 0; i < n_; ++i) {
        double d = 0.0;
        for (std::size_t j = 0; j < n_; ++j)
          d += jac.dy(i, j) * state[n_ + k * n_ + j];
        dstate[n_ + k * n_ + i] = d;
      }
  }

 private:
  Tape* tape_;
  const System* sys_;
  std::vector<double> theta_;
  std::size_t n_;
};

/// Sensitivities to parameters and initial state together: layout
/// [y | z_1 ... z_K | w_1 ... w_N].
template <typename System>
class CoupledBoth {
 public:
  CoupledBoth(Tape& tape, const System& sys, std::vector<double> theta,
              std::size_t state_dim)
      : tape_(&tape), sys_(&sys), theta_(std::move(theta)), n_(state_dim) {}

  std::size_t size() const { return n_ * (n_ + theta_.size() + 1); }

  std::vector<double> initial_state(const std::vector<double>& y0) const {
    const std::size_t k = theta_.size();
    std::vector<double> state(size(), 0.0);
    for (std::size_t i = 0; i < n_; ++i) state[i] = y0[i];
    for (std::size_t j = 0; j < n_; ++j) state[n_ + k * n_ + j * n_ + j] = 1.0;
    return state;
  }

  void operator()(double t, const std::vector<double>& state,
                  std::vector<double>& dstate) const {
    const std::size_t k = theta_.size();
    const std::vector<double> y(state.begin(), state.begin() + n_);
    const RhsJacobians jac = jacobians_of_rhs(*tape_, *sys_, t, y, theta_);
    dstate.resize(size());
    for (std::size_t i = 0; i < n_; ++i) dstate[i] = jac.f[i];
    for (std::size_t m = 0; m < k; ++m)
      for (std::size_t i = 0; i < n_; ++i) {
        double d = jac.dtheta(i, m);
        for (std::size_t j = 0; j < n_; ++j)
          d += state[n_ + m * n_ + j] * jac.dy(i, j);
        dstate[n_ + m * n_ + i] = d;
      }
    const std::size_t w_base = n_ + k * n_;
    for (std::size_t c = 0; c < n_; ++c)
      for (std::size_t i = 0; i < n_; ++i) {
        double d = 0.0;
        for (std::size_t j = 0; j < n_; ++j)
          d += jac.dy(i, j) * state[w_base + c * n_ + j];
        dstate[w_base + c * n_ + i] = d;
      }
  }

 private:
  Tape* tape_;
  const System* sys_;
  std::vector<double> theta_;
  std::size_t n_;
};

}  // namespace adtape

#endif  // ADTAPE_ODE_COUPLED_HPP
