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

#ifndef ADTAPE_FUNCTIONAL_FINITE_DIFF_HPP
#define ADTAPE_FUNCTIONAL_FINITE_DIFF_HPP

#include <cmath>
#include <limits>
#include <vector>

namespace adtape {

/// Centered-difference gradient of a plain-valued function,
/// (g(x + eps/2 e_n) - g(x - eps/2 e_n)) / eps per component.  With eps <= 0
/// each component uses cbrt(machine epsilon) * max(1, |x_n|), about the step
/// that balances truncation against cancellation; accuracy is then roughly
/// 1e-7 at best, which sets the comparison tolerances used in tests.
template <typename G>
std::vector<double> fd_gradient(const G& g, const std::vector<double>& x,
                                double eps = 0.0) {
  std::vector<double> grad(x.size());
  std::vector<double> xp = x;
  for (std::size_t n = 0; n < x.size(); ++n) {
    const double step =
        eps > 0.0 ? eps
                  : std::cbrt(std::numeric_limits<double>::epsilon()) *
                        std::max(1.0, std::fabs(x[n]));
    const double saved = xp[n];
    xp[n] = saved + step / 2.0;
    const double hi = g(xp);
    xp[n] = saved - step / 2.0;
    const double lo = g(xp);
    xp[n] = saved;
    grad[n] = (hi - lo) / step;
  }
  return grad;
}

}  // namespace adtape

#endif  // ADTAPE_FUNCTIONAL_FINITE_DIFF_HPP
