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

#ifndef ADTAPE_PROB_CHECKS_HPP
#define ADTAPE_PROB_CHECKS_HPP

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "adtape/prob/broadcast.hpp"

namespace adtape {

namespace detail {

template <typename T, typename Pred>
void check_elements(const char* function, const char* name, const T& x, Pred&& ok,
                    const char* requirement) {
  BroadcastView<T> view(x);
  for (std::size_t i = 0; i < view.length(); ++i) {
    const double v = view.value_at(i);
    if (!ok(v)) {
      std::ostringstream msg;
      msg << function << ": " << name;
      if (length(x) > 1) msg << "[" << i << "]";
      msg << " is " << v << ", but must be " << requirement;
      throw std::domain_error(msg.str());
    }
  }
}

}  // namespace detail

template <typename T>
void check_not_nan(const char* function, const char* name, const T& x) {
  detail::check_elements(function, name, x, [](double v) { return !std::isnan(v); },
                         "not NaN");
}

template <typename T>
void check_finite(const char* function, const char* name, const T& x) {
  detail::check_elements(function, name, x, [](double v) { return std::isfinite(v); },
                         "finite");
}

template <typename T>
void check_positive(const char* function, const char* name, const T& x) {
  detail::check_elements(function, name, x, [](double v) { return v > 0.0; },
                         "positive");
}

namespace detail {

inline void check_sizes_accumulate(const char* /*function*/, std::size_t& common,
                                   const char*& offender) {
  (void)common;
  (void)offender;
}

template <typename T, typename... Rest>
void check_sizes_accumulate(const char* function, std::size_t& common,
                            const char*& offender, const char* name, const T& x,
                            const Rest&... rest) {
  if constexpr (is_vector_like_v<T>) {
    const std::size_t n = x.size();
    if (common == 0) {
      common = n;
      offender = name;
    } else if (n != common) {
      std::ostringstream msg;
      msg << function << ": size of " << name << " (" << n
          << ") does not match size of " << offender << " (" << common << ")";
      throw std::invalid_argument(msg.str());
    }
  }
  check_sizes_accumulate(function, common, offender, rest...);
}

}  // namespace detail

/// All container arguments must share one size; scalars broadcast freely.
template <typename... Args>
void check_consistent_sizes(const char* function, const Args&... name_value_pairs) {
  std::size_t common = 0;
  const char* offender = nullptr;
  detail::check_sizes_accumulate(function, common, offender, name_value_pairs...);
}

}  // namespace adtape

#endif  // ADTAPE_PROB_CHECKS_HPP
