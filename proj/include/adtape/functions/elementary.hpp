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

#ifndef ADTAPE_FUNCTIONS_ELEMENTARY_HPP
#define ADTAPE_FUNCTIONS_ELEMENTARY_HPP

#include <cmath>

#include "adtape/core/var.hpp"

namespace adtape {

// Domain errors are not thrown here; invalid inputs yield IEEE inf/nan values
// that flow through the sweep.  Checked entry points live with the densities.

inline Var log(const Var& a) { return detail::unary(a, std::log(a.val()), Rule::log_v); }

inline Var exp(const Var& a) { return detail::unary(a, std::exp(a.val()), Rule::exp_v); }

inline Var sqrt(const Var& a) { return detail::unary(a, std::sqrt(a.val()), Rule::sqrt_v); }

inline Var square(const Var& a) {
  return detail::unary(a, a.val() * a.val(), Rule::square_v);
}

inline double square(double a) { return a * a; }

inline Var pow(const Var& base, const Var& exponent) {
  return detail::binary(base, exponent, std::pow(base.val(), exponent.val()),
                        Rule::pow_vv);
}

/// Exponents 0.5, 1 and 2 route to sqrt, the base itself and square; the
/// comparison is exact, matching how callers spell those exponents.
inline Var pow(const Var& base, double exponent) {
  if (exponent == 0.5) return sqrt(base);
  if (exponent == 1.0) return base;
  if (exponent == 2.0) return square(base);
  return detail::unary(base, std::pow(base.val(), exponent), Rule::pow_vc, exponent);
}

inline Var pow(double base, const Var& exponent) {
  return detail::unary(exponent, std::pow(base, exponent.val()), Rule::pow_cv, base);
}

}  // namespace adtape

#endif  // ADTAPE_FUNCTIONS_ELEMENTARY_HPP
