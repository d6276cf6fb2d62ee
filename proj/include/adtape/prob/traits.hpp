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

#ifndef ADTAPE_PROB_TRAITS_HPP
#define ADTAPE_PROB_TRAITS_HPP

#include <type_traits>
#include <vector>

#include "adtape/core/var.hpp"

namespace adtape {

template <typename T>
struct is_autodiff : std::false_type {};
template <>
struct is_autodiff<Var> : std::true_type {};
template <>
struct is_autodiff<std::vector<Var>> : std::true_type {};

template <typename T>
inline constexpr bool is_autodiff_v = is_autodiff<std::remove_cvref_t<T>>::value;

template <typename T>
inline constexpr bool is_constant_v = !is_autodiff_v<T>;

template <typename T>
struct is_vector_like : std::false_type {};
template <typename T>
struct is_vector_like<std::vector<T>> : std::true_type {};

template <typename T>
inline constexpr bool is_vector_like_v = is_vector_like<std::remove_cvref_t<T>>::value;

/// Var if any argument carries autodiff variables, double otherwise.
template <typename... Ts>
using return_t = std::conditional_t<(is_autodiff_v<Ts> || ...), Var, double>;

/// Drop-constants policy: a term whose value depends only on the listed
/// argument types may be skipped when Propto is true and all of them are
/// constants.  The normalizing term lists no arguments and survives only
/// when Propto is false.
template <bool Propto, typename... Ts>
struct include_summand
    : std::bool_constant<!Propto || (is_autodiff_v<Ts> || ... || false)> {};

template <bool Propto, typename... Ts>
inline constexpr bool include_summand_v = include_summand<Propto, Ts...>::value;

}  // namespace adtape

#endif  // ADTAPE_PROB_TRAITS_HPP
