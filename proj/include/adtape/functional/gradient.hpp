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

#ifndef ADTAPE_FUNCTIONAL_GRADIENT_HPP
#define ADTAPE_FUNCTIONAL_GRADIENT_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "adtape/core/sweep.hpp"
#include "adtape/core/var.hpp"

namespace adtape {

/// Evaluates fx = f(x) and the gradient of f at x on the given tape.  The
/// functor receives a vector of variables bound to that tape and returns one
/// variable.  The tape is recovered on exit whether or not f throws, so no
/// memory outlives the call.
template <typename F>
void gradient(Tape& tape, const F& f, const std::vector<double>& x, double& fx,
              std::vector<double>& grad_fx) {
  try {
    ScopedTape active(tape);
    std::vector<Var> x_var;
    x_var.reserve(x.size());
    for (double v : x) x_var.push_back(independent(tape, v));
    Var fx_var = f(x_var);
    if (&fx_var.tape() != &tape)
      throw std::logic_error("adtape: functor returned a variable from another tape");
    fx = fx_var.val();
    sweep(tape, fx_var.node());
    grad_fx.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) grad_fx[i] = x_var[i].adj();
  } catch (...) {
    tape.recover();
    throw;
  }
  tape.recover();
}

template <typename F>
void gradient(const F& f, const std::vector<double>& x, double& fx,
              std::vector<double>& grad_fx) {
  gradient(shared_tape(), f, x, fx, grad_fx);
}

/// Jacobian of a multi-output functor.  The expression graph is built once;
/// one reverse sweep per output fills row i with the partials of output i.
/// Adjoints are zeroed between sweeps (not before the first, where they are
/// still zero from recording).
template <typename F>
void jacobian(Tape& tape, const F& f, const std::vector<double>& x,
              std::vector<double>& fx, std::vector<std::vector<double>>& jac) {
  try {
    ScopedTape active(tape);
    std::vector<Var> x_var;
    x_var.reserve(x.size());
    for (double v : x) x_var.push_back(independent(tape, v));
    std::vector<Var> fx_var = f(x_var);
    fx.resize(fx_var.size());
    jac.assign(fx_var.size(), std::vector<double>(x.size()));
    for (std::size_t i = 0; i < fx_var.size(); ++i) {
      fx[i] = fx_var[i].val();
      if (i > 0) zero_adjoints(tape);
      sweep(tape, fx_var[i].node());
      for (std::size_t j = 0; j < x.size(); ++j) jac[i][j] = x_var[j].adj();
    }
  } catch (...) {
    tape.recover();
    throw;
  }
  tape.recover();
}

template <typename F>
void jacobian(const F& f, const std::vector<double>& x, std::vector<double>& fx,
              std::vector<std::vector<double>>& jac) {
  jacobian(shared_tape(), f, x, fx, jac);
}

}  // namespace adtape

#endif  // ADTAPE_FUNCTIONAL_GRADIENT_HPP
