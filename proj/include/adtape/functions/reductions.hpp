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

#ifndef ADTAPE_FUNCTIONS_REDUCTIONS_HPP
#define ADTAPE_FUNCTIONS_REDUCTIONS_HPP

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

#include "adtape/core/var.hpp"

namespace adtape {

namespace detail {

inline Tape& same_tape(std::span<const Var> xs) {
  Tape& t = xs.front().tape();
  for (const Var& x : xs)
    if (&x.tape() != &t)
      throw std::logic_error("adtape: operands are bound to different tapes");
  return t;
}

/// Copies the node ids of xs into t's arena.
inline const NodeId* ids_to_arena(Tape& t, std::span<const Var> xs) {
  NodeId* ids = t.alloc_array<NodeId>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ids[i] = xs[i].node();
  return ids;
}

}  // namespace detail

/// Sum of a sequence of variables as a single variadic node.  The value is
/// accumulated left to right.
inline Var sum(std::span<const Var> xs) {
  if (xs.empty()) return Var(0.0);
  if (xs.size() == 1) return xs[0];
  if (xs.size() == 2) return xs[0] + xs[1];
  Tape& t = detail::same_tape(xs);
  double total = 0.0;
  for (const Var& x : xs) total += x.val();
  const NodeId* ids = detail::ids_to_arena(t, xs);
  return Var(t, t.record_shared(total, Rule::sum_v, ids,
                                static_cast<std::uint32_t>(xs.size()), nullptr, 0,
                                nullptr, 0));
}

inline double sum(std::span<const double> xs) {
  double total = 0.0;
  for (double x : xs) total += x;
  return total;
}

namespace detail {

/// max(x) + log(sum(exp(x - max(x)))); the shift keeps the exponentials from
/// overflowing.  Entries of -inf contribute exp(-inf) = 0; an all--inf input
/// stays -inf.
inline double log_sum_exp_value(std::span<const double> vals) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : vals) m = v > m ? v : m;
  if (m == -std::numeric_limits<double>::infinity()) return m;
  double total = 0.0;
  for (double v : vals) total += std::exp(v - m);
  return m + std::log(total);
}

}  // namespace detail

inline Var log_sum_exp(std::span<const Var> xs) {
  if (xs.empty()) throw std::invalid_argument("adtape: log_sum_exp of empty sequence");
  Tape& t = detail::same_tape(xs);
  double m = -std::numeric_limits<double>::infinity();
  for (const Var& x : xs) m = x.val() > m ? x.val() : m;
  double value = m;
  if (m != -std::numeric_limits<double>::infinity()) {
    double total = 0.0;
    for (const Var& x : xs) total += std::exp(x.val() - m);
    value = m + std::log(total);
  }
  const NodeId* ids = detail::ids_to_arena(t, xs);
  return Var(t, t.record_shared(value, Rule::log_sum_exp_v, ids,
                                static_cast<std::uint32_t>(xs.size()), nullptr, 0,
                                nullptr, 0));
}

inline Var log_sum_exp(const Var& a, const Var& b) {
  const Var xs[2] = {a, b};
  return log_sum_exp(std::span<const Var>(xs, 2));
}

inline double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("adtape: log_sum_exp of empty sequence");
  return detail::log_sum_exp_value(xs);
}

inline double log_sum_exp(double a, double b) {
  const double xs[2] = {a, b};
  return detail::log_sum_exp_value(std::span<const double>(xs, 2));
}

/// Dot product of two variable sequences as one node holding both operand
/// arrays, instead of the 2N-1 nodes of the written-out sum of products.
inline Var dot_product(std::span<const Var> a, std::span<const Var> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("adtape: dot_product operands differ in size");
  if (a.empty()) return Var(0.0);
  Tape& t = detail::same_tape(a);
  if (&detail::same_tape(b) != &t)
    throw std::logic_error("adtape: operands are bound to different tapes");
  double value = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) value += a[i].val() * b[i].val();
  const NodeId* a_ids = detail::ids_to_arena(t, a);
  const NodeId* b_ids = detail::ids_to_arena(t, b);
  return Var(t, t.record_shared(value, Rule::dot_vv, a_ids,
                                static_cast<std::uint32_t>(a.size()), b_ids,
                                static_cast<std::uint32_t>(b.size()), nullptr, 0));
}

/// Mixed dot product; the constant side enters as precomputed partials.
inline Var dot_product(std::span<const Var> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("adtape: dot_product operands differ in size");
  if (a.empty()) return Var(0.0);
  Tape& t = detail::same_tape(a);
  double value = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) value += a[i].val() * b[i];
  const NodeId* ids = detail::ids_to_arena(t, a);
  double* partials = t.alloc_array<double>(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) partials[i] = b[i];
  return Var(t, t.record_shared(value, Rule::precomputed, ids,
                                static_cast<std::uint32_t>(a.size()), nullptr, 0,
                                partials, static_cast<std::uint32_t>(b.size())));
}

inline Var dot_product(std::span<const double> a, std::span<const Var> b) {
  return dot_product(b, a);
}

inline double dot_product(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("adtape: dot_product operands differ in size");
  double value = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) value += a[i] * b[i];
  return value;
}

/// General eager-partials node: operand i receives adjoint * partials[i].
inline Var precomputed(Tape& tape, double value, std::span<const Var> operands,
                       std::span<const double> partials) {
  if (operands.size() != partials.size())
    throw std::logic_error("adtape: precomputed operand/partial sizes differ");
  for (const Var& x : operands)
    if (&x.tape() != &tape)
      throw std::logic_error("adtape: operands are bound to different tapes");
  if (operands.empty())
    return Var(tape, tape.record(value, Rule::constant, {}));
  const NodeId* ids = detail::ids_to_arena(tape, operands);
  double* grads = tape.alloc_array<double>(partials.size());
  for (std::size_t i = 0; i < partials.size(); ++i) grads[i] = partials[i];
  return Var(tape, tape.record_shared(value, Rule::precomputed, ids,
                                      static_cast<std::uint32_t>(operands.size()),
                                      nullptr, 0, grads,
                                      static_cast<std::uint32_t>(partials.size())));
}

}  // namespace adtape

#endif  // ADTAPE_FUNCTIONS_REDUCTIONS_HPP
