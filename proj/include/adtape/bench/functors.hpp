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

#ifndef ADTAPE_BENCH_FUNCTORS_HPP
#define ADTAPE_BENCH_FUNCTORS_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "adtape/functions/elementary.hpp"
#include "adtape/matrix/multiply.hpp"
#include "adtape/prob/normal_log.hpp"

namespace adtape::bench {

// Each functor evaluates on either scalar kind through one template body, so
// the timed gradient path and the plain baseline run identical code.  fill()
// populates the inputs for a nominal size and may resize to the largest
// compatible size (the matrix cases need one or two full square matrices).

struct SumFun {
  static std::string name() { return "sum"; }

  static void fill(std::vector<double>& x) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i);
  }

  template <typename T>
  T operator()(const std::vector<T>& x) const {
    T total = 0.0;
    for (const T& xi : x) total += xi;
    return total;
  }
};

struct ProductFun {
  static std::string name() { return "product"; }

  // Every entry is (1e10)^(1/N) so the running product stays near 1e10.
  static void fill(std::vector<double>& x) {
    const double v = std::pow(1e10, 1.0 / static_cast<double>(x.size()));
    for (double& xi : x) xi = v;
  }

  template <typename T>
  T operator()(const std::vector<T>& x) const {
    T total = 1.0;
    for (const T& xi : x) total *= xi;
    return total;
  }
};

struct PowersChainFun {
  static std::string name() { return "powers_chain"; }

  static void fill(std::vector<double>& x) {
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = static_cast<double>(i) / static_cast<double>(x.size());
  }

  template <typename T>
  T operator()(const std::vector<T>& x) const {
    using std::pow;
    T result = 10.0;
    for (std::size_t i = 1; i < x.size(); ++i) result = pow(result, x[i]);
    return result;
  }
};

struct LogSumExpRecursiveFun {
  static std::string name() { return "log_sum_exp_recursive"; }

  static void fill(std::vector<double>& x) {
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = static_cast<double>(i) / static_cast<double>(x.size());
  }

  template <typename T>
  T operator()(const std::vector<T>& x) const {
    using std::exp;
    using std::log;
    T total = 0.0;
    for (const T& xi : x) total = log(exp(total) + exp(xi));
    return total;
  }
};

struct LogSumExpDirectFun {
  static std::string name() { return "log_sum_exp_direct"; }

  static void fill(std::vector<double>& x) { LogSumExpRecursiveFun::fill(x); }

  template <typename T>
  T operator()(const std::vector<T>& x) const {
    using std::exp;
    using std::log;
    T total = 0.0;
    for (const T& xi : x) total += exp(xi);
    return log(total);
  }
};

namespace detail {

inline std::size_t square_side(std::size_t budget) {
  auto n = static_cast<std::size_t>(std::sqrt(static_cast<double>(budget)));
  return n < 1 ? 1 : n;
}

}  // namespace detail

/// Two variable square matrices multiplied by the written-out triple loop and
/// reduced by summation.  The input budget is split across both factors, e.g.
/// 2^12 nominal entries make two 45 x 45 matrices.
struct MatrixProductVvFun {
  static std::string name() { return "matrix_product_vv"; }

  static void fill(std::vector<double>& x) {
    const std::size_t n = detail::square_side(x.size() / 2);
    x.resize(2 * n * n);
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = static_cast<double>(i + 1) / static_cast<double>(x.size() + 1);
  }

  template <typename T>
  T operator()(const std::vector<T>& x) const {
    const std::size_t n = detail::square_side(x.size() / 2);
    std::vector<T> a, b;
    a.reserve(n * n);
    b.reserve(n * n);
    std::size_t i = 0;
    for (std::size_t m = 0; m < n * n; ++m) {
      a.push_back(x[i++]);
      b.push_back(x[i++]);
    }
    T total = 0.0;
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t c = 0; c < n; ++c) {
        T entry = 0.0;
        for (std::size_t k = 0; k < n; ++k) entry += a[m * n + k] * b[k * n + c];
        total += entry;
      }
    return total;
  }
};

/// As matrix_product_vv with the second factor a constant 1.02-filled matrix.
struct MatrixProductVdFun {
  static std::string name() { return "matrix_product_vd"; }

  static void fill(std::vector<double>& x) {
    const std::size_t n = detail::square_side(x.size());
    x.resize(n * n);
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = static_cast<double>(i + 1) / static_cast<double>(x.size() + 1);
  }

  template <typename T>
  T operator()(const std::vector<T>& x) const {
    const std::size_t n = detail::square_side(x.size());
    const std::vector<double> b(n * n, 1.02);
    T total = 0.0;
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t c = 0; c < n; ++c) {
        T entry = 0.0;
        for (std::size_t k = 0; k < n; ++k) entry += x[m * n + k] * b[k * n + c];
        total += entry;
      }
    return total;
  }
};

/// The vv shapes through the library multiply (one dot-product node per
/// entry) and the variadic sum.
struct MatrixProductBuiltinFun {
  static std::string name() { return "matrix_product_builtin"; }

  static void fill(std::vector<double>& x) { MatrixProductVvFun::fill(x); }

  template <typename T>
  T operator()(const std::vector<T>& x) const {
    const std::size_t n = detail::square_side(x.size() / 2);
    std::vector<T> a_elems, b_elems;
    a_elems.reserve(n * n);
    b_elems.reserve(n * n);
    std::size_t i = 0;
    for (std::size_t m = 0; m < n * n; ++m) {
      a_elems.push_back(x[i++]);
      b_elems.push_back(x[i++]);
    }
    Matrix<T> a(n, n, std::move(a_elems));
    Matrix<T> b(n, n, std::move(b_elems));
    return sum(multiply(a, b));
  }
};

struct NormalDensityNaiveFun {
  static std::string name() { return "normal_density_naive"; }

  static void fill(std::vector<double>& x) {
    const auto size = static_cast<std::ptrdiff_t>(x.size());
    for (std::ptrdiff_t i = 0; i < size; ++i)
      x[i] = static_cast<double>(i + 1 - size / 2) / static_cast<double>(size + 1);
  }

  template <typename T>
  T operator()(const std::vector<T>& x) const {
    using std::log;
    T mu = -0.56;
    T sigma = 1.37;
    T lp = 0.0;
    for (const T& xi : x) {
      T z = (xi - mu) / sigma;
      lp += -log(sigma) - 0.5 * z * z;
    }
    return lp;
  }
};

/// The same density through the vectorized drop-constants path; the plain
/// instantiation keeps the terms that survive with variable arguments, so
/// both engines produce the same value.
struct NormalDensityBuiltinFun {
  static std::string name() { return "normal_density_builtin"; }

  static void fill(std::vector<double>& x) { NormalDensityNaiveFun::fill(x); }

  template <typename T>
  T operator()(const std::vector<T>& x) const {
    if constexpr (std::is_same_v<T, Var>) {
      Var mu = -0.56;
      Var sigma = 1.37;
      return normal_log<true>(x, mu, sigma);
    } else {
      const double mu = -0.56;
      const double sigma = 1.37;
      double lp = 0.0;
      for (double xi : x) {
        const double z = (xi - mu) / sigma;
        lp += -std::log(sigma) - 0.5 * z * z;
      }
      return lp;
    }
  }
};

/// One registered functor: its fill routine plus the same evaluation bound to
/// each scalar kind.
struct BenchFunctor {
  std::string name;
  std::function<void(std::vector<double>&)> fill;
  std::function<Var(const std::vector<Var>&)> eval_ad;
  std::function<double(const std::vector<double>&)> eval_plain;
};

namespace detail {

template <typename F>
BenchFunctor make_entry() {
  return {F::name(), [](std::vector<double>& x) { F::fill(x); },
          [](const std::vector<Var>& x) { return F{}(x); },
          [](const std::vector<double>& x) { return F{}(x); }};
}

}  // namespace detail

inline const std::vector<BenchFunctor>& registry() {
  static const std::vector<BenchFunctor> functors = {
      detail::make_entry<SumFun>(),
      detail::make_entry<ProductFun>(),
      detail::make_entry<PowersChainFun>(),
      detail::make_entry<LogSumExpRecursiveFun>(),
      detail::make_entry<LogSumExpDirectFun>(),
      detail::make_entry<MatrixProductVvFun>(),
      detail::make_entry<MatrixProductVdFun>(),
      detail::make_entry<MatrixProductBuiltinFun>(),
      detail::make_entry<NormalDensityNaiveFun>(),
      detail::make_entry<NormalDensityBuiltinFun>(),
  };
  return functors;
}

}  // namespace adtape::bench

#endif  // ADTAPE_BENCH_FUNCTORS_HPP
