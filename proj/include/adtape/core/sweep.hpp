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

#ifndef ADTAPE_CORE_SWEEP_HPP
#define ADTAPE_CORE_SWEEP_HPP

#include <cmath>
#include <limits>

#include "adtape/core/tape.hpp"

namespace adtape {

namespace detail {

/// Runs one record's propagation rule: each operand's adjoint is incremented
/// by this record's adjoint times the partial with respect to that operand.
/// Partials needing only stored values are formed here, lazily.
inline void propagate(Tape& t, const NodeRecord& r) {
  const double a = r.adjoint;
  switch (r.rule) {
    case Rule::constant:
      break;
    case Rule::add_vv:
      t[r.ops[0]].adjoint += a;
      t[r.ops[1]].adjoint += a;
      break;
    case Rule::add_v:
      t[r.ops[0]].adjoint += a;
      break;
    case Rule::sub_vv:
      t[r.ops[0]].adjoint += a;
      t[r.ops[1]].adjoint -= a;
      break;
    case Rule::neg_v:
      t[r.ops[0]].adjoint -= a;
      break;
    case Rule::mul_vv:
      t[r.ops[0]].adjoint += a * t[r.ops[1]].value;
      t[r.ops[1]].adjoint += a * t[r.ops[0]].value;
      break;
    case Rule::mul_vc:
      t[r.ops[0]].adjoint += a * r.payload[0];
      break;
    case Rule::div_vv:
      t[r.ops[0]].adjoint += a / t[r.ops[1]].value;
      t[r.ops[1]].adjoint -= a * r.value / t[r.ops[1]].value;
      break;
    case Rule::div_vc:
      t[r.ops[0]].adjoint += a / r.payload[0];
      break;
    case Rule::div_cv:
      t[r.ops[0]].adjoint -= a * r.value / t[r.ops[0]].value;
      break;
    case Rule::log_v:
      t[r.ops[0]].adjoint += a / t[r.ops[0]].value;
      break;
    case Rule::exp_v:
      t[r.ops[0]].adjoint += a * r.value;
      break;
    case Rule::sqrt_v:
      t[r.ops[0]].adjoint += a / (2.0 * r.value);
      break;
    case Rule::square_v:
      t[r.ops[0]].adjoint += a * 2.0 * t[r.ops[0]].value;
      break;
    case Rule::pow_vv: {
      const double base = t[r.ops[0]].value;
      if (base == 0.0) break;  // both partials vanish; also keeps log(0) out
      t[r.ops[0]].adjoint += a * t[r.ops[1]].value * r.value / base;
      t[r.ops[1]].adjoint += a * std::log(base) * r.value;
      break;
    }
    case Rule::pow_vc:
      t[r.ops[0]].adjoint += a * r.payload[0] * r.value / t[r.ops[0]].value;
      break;
    case Rule::pow_cv:
      t[r.ops[0]].adjoint += a * std::log(r.payload[0]) * r.value;
      break;
    case Rule::sum_v:
      for (std::uint32_t i = 0; i < r.n_ops; ++i) t[r.ops[i]].adjoint += a;
      break;
    case Rule::log_sum_exp_v:
      if (r.value == -std::numeric_limits<double>::infinity()) break;
      for (std::uint32_t i = 0; i < r.n_ops; ++i)
        t[r.ops[i]].adjoint += a * std::exp(t[r.ops[i]].value - r.value);
      break;
    case Rule::dot_vv:
      for (std::uint32_t i = 0; i < r.n_ops; ++i) {
        t[r.ops[i]].adjoint += a * t[r.ops_b[i]].value;
        t[r.ops_b[i]].adjoint += a * t[r.ops[i]].value;
      }
      break;
    case Rule::precomputed:
      for (std::uint32_t i = 0; i < r.n_ops; ++i) t[r.ops[i]].adjoint += a * r.payload[i];
      break;
  }
}

}  // namespace detail

/// Reverse pass: sets the root's adjoint to 1, then runs every record's rule
/// in strictly decreasing id order, from the top of the tape down to (and
/// including) floor.  Afterward each node's adjoint is d(root)/d(node).
/// Adjoints accumulate additively; sweeping twice without zeroing doubles
/// them.
template <typename Visitor>
inline void sweep_visit(Tape& tape, NodeId root, std::size_t floor, Visitor&& visit) {
  tape[root].adjoint = 1.0;
  for (std::size_t i = tape.len(); i-- > floor;) {
    visit(NodeId{i});
    detail::propagate(tape, tape[NodeId{i}]);
  }
}

inline void sweep(Tape& tape, NodeId root) {
  sweep_visit(tape, root, 0, [](NodeId) {});
}

/// Nested sweep: propagation stops at the mark instead of the tape bottom.
inline void sweep(Tape& tape, NodeId root, const TapeMark& floor) {
  sweep_visit(tape, root, floor.node_count, [](NodeId) {});
}

inline void zero_adjoints(Tape& tape, std::size_t from = 0) {
  for (std::size_t i = from; i < tape.len(); ++i) tape[NodeId{i}].adjoint = 0.0;
}

inline void zero_adjoints(Tape& tape, const TapeMark& from) {
  zero_adjoints(tape, from.node_count);
}

}  // namespace adtape

#endif  // ADTAPE_CORE_SWEEP_HPP
