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

#ifndef ADTAPE_PROB_NORMAL_LOG_HPP
#define ADTAPE_PROB_NORMAL_LOG_HPP

#include <cmath>

#include "adtape/prob/checks.hpp"
#include "adtape/prob/operands_partials.hpp"

namespace adtape {

/// -log(sqrt(2 pi)) to full double precision.
inline constexpr double neg_log_sqrt_two_pi = -0.91893853320467274178;

/// Vectorized normal log density
///
///   sum_n [ -0.5 log(2 pi) - log(sigma_n) - 0.5 ((y_n - mu_n)/sigma_n)^2 ]
///
/// over the broadcast length of the three arguments, each a double, Var,
/// vector<double>, or vector<Var>.  With Propto set, terms constant in the
/// autodiff arguments are dropped: the normalizing constant always, the
/// log sigma term when sigma is constant, and when everything is constant the
/// function returns 0.0 without touching any tape.  1/sigma is cached per
/// distinct sigma element and log sigma only when its term is kept, so the
/// call performs exactly length(sigma) logarithms or none.  The result ties
/// into the graph as a single precomputed-gradients node regardless of N.
template <bool Propto = false, typename TY, typename TMu, typename TSigma>
return_t<TY, TMu, TSigma> normal_log(const TY& y, const TMu& mu, const TSigma& sigma) {
  static constexpr const char* function = "normal_log";
  check_not_nan(function, "Random variable", y);
  check_finite(function, "Location parameter", mu);
  check_positive(function, "Scale parameter", sigma);
  check_consistent_sizes(function, "Random variable", y, "Location parameter", mu,
                         "Scale parameter", sigma);

  if (length(y) == 0 || length(mu) == 0 || length(sigma) == 0) return 0.0;
  if constexpr (!include_summand_v<Propto, TY, TMu, TSigma>) return 0.0;

  const BroadcastView<TY> y_vec(y);
  const BroadcastView<TMu> mu_vec(mu);
  const BroadcastView<TSigma> sigma_vec(sigma);
  const std::size_t n_max =
      std::max(length(y), std::max(length(mu), length(sigma)));

  ValueCache<true> inv_sigma(length(sigma));
  for (std::size_t i = 0; i < length(sigma); ++i)
    inv_sigma.set(i, 1.0 / sigma_vec.value_at(i));

  ValueCache<include_summand_v<Propto, TSigma>> log_sigma(length(sigma));
  if constexpr (include_summand_v<Propto, TSigma>)
    for (std::size_t i = 0; i < length(sigma); ++i)
      log_sigma.set(i, std::log(sigma_vec.value_at(i)));

  double logp = 0.0;
  constexpr bool any_var = is_autodiff_v<TY> || is_autodiff_v<TMu> || is_autodiff_v<TSigma>;

  auto accumulate = [&](auto&& apply_partials) {
    for (std::size_t n = 0; n < n_max; ++n) {
      const double z = (y_vec.value_at(n) - mu_vec.value_at(n)) * inv_sigma[n];
      const double z_squared = z * z;
      if constexpr (include_summand_v<Propto>) logp += neg_log_sqrt_two_pi;
      if constexpr (include_summand_v<Propto, TSigma>) logp -= log_sigma[n];
      if constexpr (include_summand_v<Propto, TY, TMu, TSigma>)
        logp -= 0.5 * z_squared;
      apply_partials(n, z, z_squared);
    }
  };

  if constexpr (any_var) {
    Tape& tape = find_tape(y, mu, sigma);
    PartialsAccumulator<TY, TMu, TSigma> partials(tape, y, mu, sigma);
    accumulate([&](std::size_t n, double z, double z_squared) {
      const double scaled_diff = inv_sigma[n] * z;
      if constexpr (is_autodiff_v<TY>) partials.d1()[n] -= scaled_diff;
      if constexpr (is_autodiff_v<TMu>) partials.d2()[n] += scaled_diff;
      if constexpr (is_autodiff_v<TSigma>)
        partials.d3()[n] += inv_sigma[n] * (z_squared - 1.0);
    });
    return partials.finish(logp);
  } else {
    accumulate([](std::size_t, double, double) {});
    return logp;
  }
}

}  // namespace adtape

#endif  // ADTAPE_PROB_NORMAL_LOG_HPP
