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

#ifndef ADTAPE_MATRIX_LOG_DETERMINANT_HPP
#define ADTAPE_MATRIX_LOG_DETERMINANT_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>

#include "adtape/matrix/matrix.hpp"
#include "adtape/matrix/multiply.hpp"

namespace adtape {

/// log |det m| with the gradient (m^-1)^T attached as precomputed partials.
///
/// The numeric work runs on the plain values: a full-pivot Householder QR
/// factorization yields the log absolute determinant and the inverse, and the
/// partials are stored eagerly rather than refactoring the matrix in the
/// reverse pass.  A singular value matrix yields -inf with non-finite
/// partials; nothing is thrown.
inline Var log_determinant(const Matrix<Var>& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("adtape: log_determinant requires a square matrix");
  Tape& t = detail::matrix_tape(m);
  const std::size_t n = m.rows();

  Eigen::MatrixXd values(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) values(r, c) = m(r, c).val();

  Eigen::FullPivHouseholderQR<Eigen::MatrixXd> qr(values);
  const double val = qr.logAbsDeterminant();
  const Eigen::MatrixXd inv_transpose = qr.inverse().transpose();

  // Operands and partials share the matrix's row-major element order.
  NodeId* ops = t.alloc_array<NodeId>(n * n);
  double* grads = t.alloc_array<double>(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      ops[r * n + c] = m(r, c).node();
      grads[r * n + c] = inv_transpose(r, c);
    }
  const auto count = static_cast<std::uint32_t>(n * n);
  return Var(t, t.record_shared(val, Rule::precomputed, ops, count, nullptr, 0, grads,
                                count));
}

inline double log_determinant(const Matrix<double>& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("adtape: log_determinant requires a square matrix");
  Eigen::MatrixXd values(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) values(r, c) = m(r, c);
  return Eigen::FullPivHouseholderQR<Eigen::MatrixXd>(values).logAbsDeterminant();
}

}  // namespace adtape

#endif  // ADTAPE_MATRIX_LOG_DETERMINANT_HPP
