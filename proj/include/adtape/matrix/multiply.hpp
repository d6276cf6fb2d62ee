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

#ifndef ADTAPE_MATRIX_MULTIPLY_HPP
#define ADTAPE_MATRIX_MULTIPLY_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "adtape/functions/reductions.hpp"
#include "adtape/matrix/matrix.hpp"

namespace adtape {

namespace detail {

inline void check_multiply_dims(std::size_t a_cols, std::size_t b_rows) {
  if (a_cols != b_rows)
    throw std::invalid_argument("adtape: matrix product inner dimensions differ");
}

inline Tape& matrix_tape(const Matrix<Var>& m) {
  Tape& t = m.elements().front().tape();
  for (const Var& v : m.elements())
    if (&v.tape() != &t)
      throw std::logic_error("adtape: matrix elements are bound to different tapes");
  return t;
}

/// One id array per row of m, allocated in the arena and shared by every
/// product entry that consumes that row.
inline std::vector<const NodeId*> row_id_arrays(Tape& t, const Matrix<Var>& m) {
  std::vector<const NodeId*> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    NodeId* ids = t.alloc_array<NodeId>(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) ids[c] = m(r, c).node();
    rows[r] = ids;
  }
  return rows;
}

inline std::vector<const NodeId*> col_id_arrays(Tape& t, const Matrix<Var>& m) {
  std::vector<const NodeId*> cols(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    NodeId* ids = t.alloc_array<NodeId>(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) ids[r] = m(r, c).node();
    cols[c] = ids;
  }
  return cols;
}

inline std::vector<const double*> row_value_arrays(Tape& t, const Matrix<double>& m) {
  std::vector<const double*> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double* vals = t.alloc_array<double>(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) vals[c] = m(r, c);
    rows[r] = vals;
  }
  return rows;
}

inline std::vector<const double*> col_value_arrays(Tape& t, const Matrix<double>& m) {
  std::vector<const double*> cols(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    double* vals = t.alloc_array<double>(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) vals[r] = m(r, c);
    cols[c] = vals;
  }
  return cols;
}

}  // namespace detail

inline Matrix<double> multiply(const Matrix<double>& a, const Matrix<double>& b) {
  detail::check_multiply_dims(a.cols(), b.rows());
  Matrix<double> out(a.rows(), b.cols(), 0.0);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double arv = a(r, k);
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += arv * b(k, c);
    }
  return out;
}

/// Product of two variable matrices: one dot-product node per result entry.
/// The row id arrays of a and column id arrays of b are built once and shared
/// across entries, so operand storage is O(rows*cols + inner), not cubic.
inline Matrix<Var> multiply(const Matrix<Var>& a, const Matrix<Var>& b) {
  detail::check_multiply_dims(a.cols(), b.rows());
  Tape& t = detail::matrix_tape(a);
  if (&detail::matrix_tape(b) != &t)
    throw std::logic_error("adtape: matrix operands are bound to different tapes");
  const auto rows = detail::row_id_arrays(t, a);
  const auto cols = detail::col_id_arrays(t, b);
  const auto inner = static_cast<std::uint32_t>(a.cols());
  std::vector<Var> out;
  out.reserve(a.rows() * b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) {
      double value = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) value += a(r, k).val() * b(k, c).val();
      out.emplace_back(
          t, t.record_shared(value, Rule::dot_vv, rows[r], inner, cols[c], inner,
                             nullptr, 0));
    }
  return Matrix<Var>(a.rows(), b.cols(), std::move(out));
}

/// Variable times constant matrix; the constant columns enter as shared
/// precomputed-partial arrays, adding no nodes of their own.
inline Matrix<Var> multiply(const Matrix<Var>& a, const Matrix<double>& b) {
  detail::check_multiply_dims(a.cols(), b.rows());
  Tape& t = detail::matrix_tape(a);
  const auto rows = detail::row_id_arrays(t, a);
  const auto cols = detail::col_value_arrays(t, b);
  const auto inner = static_cast<std::uint32_t>(a.cols());
  std::vector<Var> out;
  out.reserve(a.rows() * b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) {
      double value = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) value += a(r, k).val() * b(k, c);
      out.emplace_back(t, t.record_shared(value, Rule::precomputed, rows[r], inner,
                                          nullptr, 0, cols[c], inner));
    }
  return Matrix<Var>(a.rows(), b.cols(), std::move(out));
}

inline Matrix<Var> multiply(const Matrix<double>& a, const Matrix<Var>& b) {
  detail::check_multiply_dims(a.cols(), b.rows());
  Tape& t = detail::matrix_tape(b);
  const auto rows = detail::row_value_arrays(t, a);
  const auto cols = detail::col_id_arrays(t, b);
  const auto inner = static_cast<std::uint32_t>(a.cols());
  std::vector<Var> out;
  out.reserve(a.rows() * b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) {
      double value = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) value += a(r, k) * b(k, c).val();
      out.emplace_back(t, t.record_shared(value, Rule::precomputed, cols[c], inner,
                                          nullptr, 0, rows[r], inner));
    }
  return Matrix<Var>(a.rows(), b.cols(), std::move(out));
}

/// a * a^T with one set of row id arrays serving both factor roles.  Entry
/// values are computed once per unordered pair, so the result is exactly
/// symmetric.
inline Matrix<Var> multiply_self_transpose(const Matrix<Var>& a) {
  Tape& t = detail::matrix_tape(a);
  const auto rows = detail::row_id_arrays(t, a);
  const auto inner = static_cast<std::uint32_t>(a.cols());
  const std::size_t n = a.rows();
  std::vector<double> values(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double value = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) value += a(i, k).val() * a(j, k).val();
      values[i * n + j] = value;
      values[j * n + i] = value;
    }
  std::vector<Var> out;
  out.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.emplace_back(t, t.record_shared(values[i * n + j], Rule::dot_vv, rows[i],
                                          inner, rows[j], inner, nullptr, 0));
  return Matrix<Var>(n, n, std::move(out));
}

inline Matrix<double> multiply_self_transpose(const Matrix<double>& a) {
  return multiply(a, a.transpose());
}

inline Var sum(const Matrix<Var>& m) { return sum(m.elements()); }
inline double sum(const Matrix<double>& m) { return sum(m.elements()); }

}  // namespace adtape

#endif  // ADTAPE_MATRIX_MULTIPLY_HPP
