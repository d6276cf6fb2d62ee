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

#ifndef ADTAPE_CORE_TAPE_HPP
#define ADTAPE_CORE_TAPE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "adtape/core/arena.hpp"

namespace adtape {

/// Position of a node record on its tape.  Records are appended in evaluation
/// order, so every operand id stored by a record is strictly smaller than the
/// record's own id; the tape is a topological sort of the expression graph.
struct NodeId {
  std::size_t index = 0;

  friend bool operator==(NodeId, NodeId) = default;
  friend auto operator<=>(NodeId, NodeId) = default;
};

/// How a record propagates its adjoint to its operands during the reverse
/// sweep.  Partials are evaluated lazily from stored values wherever the
/// arithmetic allows; only the rules backed by payload data carry constants.
enum class Rule : std::uint8_t {
  constant,      // no propagation
  add_vv,        // ops[0] += a;  ops[1] += a
  add_v,         // ops[0] += a                  (mixed add/sub, partial +1)
  sub_vv,        // ops[0] += a;  ops[1] -= a
  neg_v,         // ops[0] -= a                  (negation, scalar - var)
  mul_vv,        // ops[0] += a*v1;  ops[1] += a*v0
  mul_vc,        // ops[0] += a*payload[0]
  div_vv,        // ops[0] += a/v1;  ops[1] -= a*val/v1
  div_vc,        // ops[0] += a/payload[0]
  div_cv,        // ops[0] -= a*val/v0           (constant numerator)
  log_v,         // ops[0] += a/v0
  exp_v,         // ops[0] += a*val
  sqrt_v,        // ops[0] += a/(2*val)
  square_v,      // ops[0] += a*2*v0
  pow_vv,        // zero base: no-op; else chain rule through both operands
  pow_vc,        // ops[0] += a*payload[0]*val/v0
  pow_cv,        // ops[0] += a*log(payload[0])*val
  sum_v,         // ops[i] += a for all i
  log_sum_exp_v, // ops[i] += a*exp(v_i - val)
  dot_vv,        // ops[i] += a*value(ops_b[i]);  ops_b[i] += a*value(ops[i])
  precomputed,   // ops[i] += a*payload[i]
};

/// One node of the expression graph.  Operand ids and payload reals live in
/// the tape's arena; the adjoint is the only field mutated after recording.
struct NodeRecord {
  double value = 0.0;
  double adjoint = 0.0;
  const NodeId* ops = nullptr;
  const NodeId* ops_b = nullptr;   // second operand array (dot products)
  const double* payload = nullptr;
  std::uint32_t n_ops = 0;
  std::uint32_t n_ops_b = 0;
  std::uint32_t n_payload = 0;
  Rule rule = Rule::constant;

  std::span<const NodeId> operands() const { return {ops, n_ops}; }
  std::span<const NodeId> operands_b() const { return {ops_b, n_ops_b}; }
  std::span<const double> constants() const { return {payload, n_payload}; }
};

/// Snapshot of a tape's extent, used to unwind nested recording episodes.
struct TapeMark {
  std::size_t node_count = 0;
  Arena::Cursor arena;
};

/// Append-only expression tape.  Owns the node records of one differentiation
/// episode plus the arena backing their operand and payload arrays.  A tape
/// may be handed between threads but never accessed concurrently.
class Tape {
 public:
  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  /// Appends a record, copying the operand and payload sequences into the
  /// arena.  Returns the id of the new record (== previous tape length).
  NodeId record(double value, Rule rule, std::span<const NodeId> operands,
                std::span<const double> payload = {}) {
    const NodeId* ops = nullptr;
    if (!operands.empty()) {
      NodeId* dst = arena_.alloc_array<NodeId>(operands.size());
      for (std::size_t i = 0; i < operands.size(); ++i) {
        if (operands[i].index >= records_.size())
          throw std::logic_error("adtape: operand does not exist on this tape");
        dst[i] = operands[i];
      }
      ops = dst;
    }
    const double* pay = nullptr;
    if (!payload.empty()) {
      double* dst = arena_.alloc_array<double>(payload.size());
      for (std::size_t i = 0; i < payload.size(); ++i) dst[i] = payload[i];
      pay = dst;
    }
    return record_shared(value, rule, ops, static_cast<std::uint32_t>(operands.size()),
                         nullptr, 0, pay, static_cast<std::uint32_t>(payload.size()));
  }

  /// Appends a record whose operand/payload arrays already live in this
  /// tape's arena.  Lets several records share one array (matrix products).
  NodeId record_shared(double value, Rule rule, const NodeId* ops, std::uint32_t n_ops,
                       const NodeId* ops_b, std::uint32_t n_ops_b, const double* payload,
                       std::uint32_t n_payload) {
    NodeRecord r;
    r.value = value;
    r.rule = rule;
    r.ops = ops;
    r.n_ops = n_ops;
    r.ops_b = ops_b;
    r.n_ops_b = n_ops_b;
    r.payload = payload;
    r.n_payload = n_payload;
    records_.push_back(r);
    return NodeId{records_.size() - 1};
  }

  template <typename T>
  T* alloc_array(std::size_t n) {
    return arena_.alloc_array<T>(n);
  }

  void* alloc_bytes(std::size_t len) { return arena_.alloc(len); }

  NodeRecord& operator[](NodeId id) { return records_[id.index]; }
  const NodeRecord& operator[](NodeId id) const { return records_[id.index]; }

  double value(NodeId id) const { return records_[id.index].value; }
  double adjoint(NodeId id) const { return records_[id.index].adjoint; }

  std::size_t len() const { return records_.size(); }
  std::size_t used_bytes() const { return arena_.used_bytes(); }
  std::size_t reserved_bytes() const { return arena_.reserved_bytes(); }

  /// Drops every record and rewinds the arena; reserved blocks are kept so
  /// the next episode runs allocation-free.
  void recover() {
    records_.clear();
    arena_.recover();
  }

  /// As recover(), but returns all reserved memory to the initial state.
  void free_all() {
    records_.clear();
    records_.shrink_to_fit();
    arena_.free_all();
  }

  TapeMark mark() const { return {records_.size(), arena_.cursor()}; }

  /// Discards every record above the mark.  Adjoints below it are untouched.
  void truncate_to(const TapeMark& m) {
    if (m.node_count > records_.size())
      throw std::logic_error("adtape: stale tape mark, tape is already shorter");
    records_.resize(m.node_count);
    arena_.rewind_to(m.arena);
  }

 private:
  std::vector<NodeRecord> records_;
  Arena arena_;
};

namespace detail {
inline thread_local Tape* ambient_tape_ptr = nullptr;
}  // namespace detail

/// Tape used by this thread when none is named explicitly; recovered (not
/// destroyed) by the gradient functionals, so its blocks are reused.
inline Tape& shared_tape() {
  static thread_local Tape tape;
  return tape;
}

/// The tape new constants bind to: the innermost ScopedTape, or the thread's
/// shared tape.
inline Tape& ambient_tape() {
  return detail::ambient_tape_ptr != nullptr ? *detail::ambient_tape_ptr : shared_tape();
}

/// Makes a tape ambient for the current scope.
class ScopedTape {
 public:
  explicit ScopedTape(Tape& tape) : prev_(detail::ambient_tape_ptr) {
    detail::ambient_tape_ptr = &tape;
  }
  ~ScopedTape() { detail::ambient_tape_ptr = prev_; }

  ScopedTape(const ScopedTape&) = delete;
  ScopedTape& operator=(const ScopedTape&) = delete;

 private:
  Tape* prev_;
};

}  // namespace adtape

#endif  // ADTAPE_CORE_TAPE_HPP
