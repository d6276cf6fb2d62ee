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

#ifndef ADTAPE_CORE_VAR_HPP
#define ADTAPE_CORE_VAR_HPP

#include <stdexcept>

#include "adtape/core/tape.hpp"

namespace adtape {

/// Scalar autodiff handle: a node id bound to a tape.  Copying a Var copies
/// the handle, never the record.  Every Var is born bound; construction from
/// a plain value records a constant node on the ambient tape.
class Var {
 public:
  Var(double value)  // NOLINT(google-explicit-constructor): mirrors double
      : Var(ambient_tape(), value) {}

  Var(Tape& tape, double value)
      : tape_(&tape), node_(tape.record(value, Rule::constant, {})) {}

  Var(Tape& tape, NodeId node) : tape_(&tape), node_(node) {}

  double val() const { return tape_->value(node_); }
  double adj() const { return tape_->adjoint(node_); }

  NodeId node() const { return node_; }
  Tape& tape() const { return *tape_; }

  Var& operator+=(const Var& b);
  Var& operator-=(const Var& b);
  Var& operator*=(const Var& b);
  Var& operator/=(const Var& b);
  Var& operator+=(double b);
  Var& operator-=(double b);
  Var& operator*=(double b);
  Var& operator/=(double b);

 private:
  Tape* tape_;
  NodeId node_;
};

/// Records a constant node to serve as an input of a later sweep.
inline Var independent(Tape& tape, double value) { return Var(tape, value); }

inline double value_of(const Var& v) { return v.val(); }
inline double value_of(double x) { return x; }
inline double value_of(int x) { return static_cast<double>(x); }

namespace detail {

inline Tape& same_tape(const Var& a, const Var& b) {
  if (&a.tape() != &b.tape())
    throw std::logic_error("adtape: operands are bound to different tapes");
  return a.tape();
}

inline Var unary(const Var& a, double value, Rule rule) {
  const NodeId ops[1] = {a.node()};
  return Var(a.tape(), a.tape().record(value, rule, ops));
}

inline Var unary(const Var& a, double value, Rule rule, double constant) {
  const NodeId ops[1] = {a.node()};
  const double payload[1] = {constant};
  return Var(a.tape(), a.tape().record(value, rule, ops, payload));
}

inline Var binary(const Var& a, const Var& b, double value, Rule rule) {
  Tape& t = same_tape(a, b);
  const NodeId ops[2] = {a.node(), b.node()};
  return Var(t, t.record(value, rule, ops));
}

}  // namespace detail

inline Var operator+(const Var& a, const Var& b) {
  return detail::binary(a, b, a.val() + b.val(), Rule::add_vv);
}
inline Var operator+(const Var& a, double b) {
  return detail::unary(a, a.val() + b, Rule::add_v);
}
inline Var operator+(double a, const Var& b) {
  return detail::unary(b, a + b.val(), Rule::add_v);
}

inline Var operator-(const Var& a, const Var& b) {
  return detail::binary(a, b, a.val() - b.val(), Rule::sub_vv);
}
inline Var operator-(const Var& a, double b) {
  return detail::unary(a, a.val() - b, Rule::add_v);
}
inline Var operator-(double a, const Var& b) {
  return detail::unary(b, a - b.val(), Rule::neg_v);
}

inline Var operator-(const Var& a) { return detail::unary(a, -a.val(), Rule::neg_v); }
inline Var operator+(const Var& a) { return a; }

inline Var operator*(const Var& a, const Var& b) {
  return detail::binary(a, b, a.val() * b.val(), Rule::mul_vv);
}
inline Var operator*(const Var& a, double b) {
  return detail::unary(a, a.val() * b, Rule::mul_vc, b);
}
inline Var operator*(double a, const Var& b) {
  return detail::unary(b, a * b.val(), Rule::mul_vc, a);
}

inline Var operator/(const Var& a, const Var& b) {
  return detail::binary(a, b, a.val() / b.val(), Rule::div_vv);
}
inline Var operator/(const Var& a, double b) {
  return detail::unary(a, a.val() / b, Rule::div_vc, b);
}
inline Var operator/(double a, const Var& b) {
  return detail::unary(b, a / b.val(), Rule::div_cv);
}

inline Var& Var::operator+=(const Var& b) { return *this = *this + b; }
inline Var& Var::operator-=(const Var& b) { return *this = *this - b; }
inline Var& Var::operator*=(const Var& b) { return *this = *this * b; }
inline Var& Var::operator/=(const Var& b) { return *this = *this / b; }
inline Var& Var::operator+=(double b) { return *this = *this + b; }
inline Var& Var::operator-=(double b) { return *this = *this - b; }
inline Var& Var::operator*=(double b) { return *this = *this * b; }
inline Var& Var::operator/=(double b) { return *this = *this / b; }

// Comparisons act on values only and record nothing.
inline bool operator==(const Var& a, const Var& b) { return a.val() == b.val(); }
inline bool operator==(const Var& a, double b) { return a.val() == b; }
inline bool operator==(double a, const Var& b) { return a == b.val(); }
inline bool operator!=(const Var& a, const Var& b) { return a.val() != b.val(); }
inline bool operator!=(const Var& a, double b) { return a.val() != b; }
inline bool operator!=(double a, const Var& b) { return a != b.val(); }
inline bool operator<(const Var& a, const Var& b) { return a.val() < b.val(); }
inline bool operator<(const Var& a, double b) { return a.val() < b; }
inline bool operator<(double a, const Var& b) { return a < b.val(); }
inline bool operator<=(const Var& a, const Var& b) { return a.val() <= b.val(); }
inline bool operator<=(const Var& a, double b) { return a.val() <= b; }
inline bool operator<=(double a, const Var& b) { return a <= b.val(); }
inline bool operator>(const Var& a, const Var& b) { return a.val() > b.val(); }
inline bool operator>(const Var& a, double b) { return a.val() > b; }
inline bool operator>(double a, const Var& b) { return a > b.val(); }
inline bool operator>=(const Var& a, const Var& b) { return a.val() >= b.val(); }
inline bool operator>=(const Var& a, double b) { return a.val() >= b; }
inline bool operator>=(double a, const Var& b) { return a >= b.val(); }

inline bool operator!(const Var& a) { return a.val() == 0.0; }
inline bool operator&&(const Var& a, const Var& b) { return a.val() != 0.0 && b.val() != 0.0; }
inline bool operator&&(const Var& a, bool b) { return a.val() != 0.0 && b; }
inline bool operator&&(bool a, const Var& b) { return a && b.val() != 0.0; }
inline bool operator||(const Var& a, const Var& b) { return a.val() != 0.0 || b.val() != 0.0; }
inline bool operator||(const Var& a, bool b) { return a.val() != 0.0 || b; }
inline bool operator||(bool a, const Var& b) { return a || b.val() != 0.0; }

}  // namespace adtape

#endif  // ADTAPE_CORE_VAR_HPP
