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

#ifndef ADTAPE_PROB_OPERANDS_PARTIALS_HPP
#define ADTAPE_PROB_OPERANDS_PARTIALS_HPP

#include <cstdint>
#include <stdexcept>

#include "adtape/core/var.hpp"
#include "adtape/prob/broadcast.hpp"
#include "adtape/prob/traits.hpp"

namespace adtape {

namespace detail {

template <typename T>
void collect_tape(Tape*& tape, const T& x) {
  if constexpr (std::is_same_v<std::remove_cvref_t<T>, Var>) {
    if (tape == nullptr) tape = &x.tape();
    if (tape != &x.tape())
      throw std::logic_error("adtape: operands are bound to different tapes");
  } else if constexpr (is_autodiff_v<T>) {
    for (const Var& v : x) collect_tape(tape, v);
  }
}

}  // namespace detail

/// Tape shared by every autodiff argument; at least one must carry variables.
template <typename... Args>
Tape& find_tape(const Args&... args) {
  Tape* tape = nullptr;
  (detail::collect_tape(tape, args), ...);
  if (tape == nullptr) throw std::logic_error("adtape: no autodiff argument present");
  return *tape;
}

/// Accumulator for eagerly computed partials of a reduction over broadcast
/// arguments.  The operand ids of the non-constant arguments are laid out
/// back to back in the arena (x1 block, then x2, then x3) with a parallel
/// zero-initialized partials array; each argument sees its own block through
/// a window that repeats the single slot for scalar arguments and discards
/// writes for constant ones.  finish() emits the one precomputed-gradients
/// node tying the result to every operand.
template <typename T1, typename T2, typename T3>
class PartialsAccumulator {
 public:
  class Window {
   public:
    Window(double* base, bool vector_like) : base_(base), vec_(vector_like) {}

    double& operator[](std::size_t i) { return base_[vec_ ? i : 0]; }

   private:
    double* base_;
    bool vec_;
  };

  PartialsAccumulator(Tape& tape, const T1& x1, const T2& x2, const T3& x3)
      : tape_(tape) {
    const std::size_t n1 = is_constant_v<T1> ? 0 : length(x1);
    const std::size_t n2 = is_constant_v<T2> ? 0 : length(x2);
    const std::size_t n3 = is_constant_v<T3> ? 0 : length(x3);
    n_ = n1 + n2 + n3;
    ops_ = tape.alloc_array<NodeId>(n_);
    partials_ = tape.alloc_array<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) partials_[i] = 0.0;
    std::size_t base = 0;
    base += set_ids(ops_ + base, x1);
    base += set_ids(ops_ + base, x2);
    set_ids(ops_ + base, x3);
    d1_ = Window(is_constant_v<T1> ? &sink_ : partials_, is_vector_like_v<T1>);
    d2_ = Window(is_constant_v<T2> ? &sink_ : partials_ + n1, is_vector_like_v<T2>);
    d3_ = Window(is_constant_v<T3> ? &sink_ : partials_ + n1 + n2,
                 is_vector_like_v<T3>);
  }

  Window& d1() { return d1_; }
  Window& d2() { return d2_; }
  Window& d3() { return d3_; }

  std::size_t operand_count() const { return n_; }

  Var finish(double value) {
    return Var(tape_, tape_.record_shared(value, Rule::precomputed, ops_,
                                          static_cast<std::uint32_t>(n_), nullptr, 0,
                                          partials_, static_cast<std::uint32_t>(n_)));
  }

 private:
  template <typename T>
  static std::size_t set_ids(NodeId* dst, const T& x) {
    if constexpr (std::is_same_v<std::remove_cvref_t<T>, Var>) {
      dst[0] = x.node();
      return 1;
    } else if constexpr (is_autodiff_v<T>) {
      for (std::size_t i = 0; i < x.size(); ++i) dst[i] = x[i].node();
      return x.size();
    } else {
      return 0;
    }
  }

  Tape& tape_;
  std::size_t n_ = 0;
  NodeId* ops_ = nullptr;
  double* partials_ = nullptr;
  double sink_ = 0.0;
  Window d1_{nullptr, false};
  Window d2_{nullptr, false};
  Window d3_{nullptr, false};
};

}  // namespace adtape

#endif  // ADTAPE_PROB_OPERANDS_PARTIALS_HPP
