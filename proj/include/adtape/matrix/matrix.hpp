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

#ifndef ADTAPE_MATRIX_MATRIX_HPP
#define ADTAPE_MATRIX_MATRIX_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "adtape/core/var.hpp"

namespace adtape {

/// Dense row-major matrix over Var or double elements.  Purely a container;
/// no element is recorded by construction and copying copies handles.
template <typename T>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> elements)
      : rows_(rows), cols_(cols), elems_(std::move(elements)) {
    if (rows_ == 0 || cols_ == 0)
      throw std::invalid_argument("adtape: matrix dimensions must be positive");
    if (elems_.size() != rows_ * cols_)
      throw std::invalid_argument("adtape: matrix element count does not match shape");
  }

  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : Matrix(rows, cols, std::vector<T>(rows * cols, fill)) {}

  Matrix(std::size_t rows, std::size_t cols)
    requires std::default_initializable<T>
      : Matrix(rows, cols, std::vector<T>(rows * cols)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return elems_.size(); }

  T& operator()(std::size_t r, std::size_t c) { return elems_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return elems_[r * cols_ + c]; }

  std::span<const T> elements() const { return elems_; }
  std::span<T> elements() { return elems_; }

  Matrix transpose() const {
    std::vector<T> out;
    out.reserve(elems_.size());
    for (std::size_t c = 0; c < cols_; ++c)
      for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
    return Matrix(cols_, rows_, std::move(out));
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<T> elems_;
};

inline Matrix<double> value_of(const Matrix<Var>& m) {
  std::vector<double> vals;
  vals.reserve(m.size());
  for (const Var& v : m.elements()) vals.push_back(v.val());
  return Matrix<double>(m.rows(), m.cols(), std::move(vals));
}

inline const Matrix<double>& value_of(const Matrix<double>& m) { return m; }

}  // namespace adtape

#endif  // ADTAPE_MATRIX_MATRIX_HPP
