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

#ifndef ADTAPE_PROB_BROADCAST_HPP
#define ADTAPE_PROB_BROADCAST_HPP

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "adtape/prob/traits.hpp"

namespace adtape {

/// Number of broadcast elements: 1 for scalars, the size for containers.
template <typename T>
std::size_t length(const T& x) {
  if constexpr (is_vector_like_v<T>)
    return x.size();
  else
    return 1;
}

/// Uniform read view over a scalar-or-vector argument.  A scalar repeats at
/// every index; a vector clamps to its last element, so operator[](i)
/// returns element min(i, length - 1) in all cases.
template <typename T>
class BroadcastView {
 public:
  explicit BroadcastView(const T& x) : x_(x) {}

  decltype(auto) operator[](std::size_t i) const {
    if constexpr (is_vector_like_v<T>)
      return x_[std::min(i, x_.size() - 1)];
    else
      return x_;
  }

  double value_at(std::size_t i) const { return value_of((*this)[i]); }

  std::size_t length() const { return adtape::length(x_); }

 private:
  const T& x_;
};

namespace detail {
// Shared-cache diagnostics; tests use these to confirm that dropped terms
// cost no transcendental evaluations.
inline thread_local std::size_t cache_fill_count = 0;
}  // namespace detail

/// Storage for per-element intermediate values (inverses, logs) computed once
/// per distinct source element.  When Used is false nothing is stored and any
/// access is a logic error: the guarded fill loop must have been skipped too.
template <bool Used>
class ValueCache {
 public:
  explicit ValueCache(std::size_t n) {
    if constexpr (Used) data_.resize(n);
  }

  void set(std::size_t i, double v) {
    if constexpr (Used) {
      data_[i] = v;
      ++detail::cache_fill_count;
    } else {
      throw std::logic_error("adtape: value cache is unused");
    }
  }

  double operator[](std::size_t i) const {
    if constexpr (Used)
      return data_[std::min(i, data_.size() - 1)];
    else
      throw std::logic_error("adtape: value cache is unused");
  }

  static constexpr bool used() { return Used; }

  std::size_t size() const { return data_.size(); }

 private:
  std::vector<double> data_;
};

}  // namespace adtape

#endif  // ADTAPE_PROB_BROADCAST_HPP
