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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "adtape/core/sweep.hpp"
#include "adtape/functional/finite_diff.hpp"
#include "adtape/functional/gradient.hpp"
#include "adtape/matrix/log_determinant.hpp"
#include "adtape/matrix/matrix.hpp"
#include "adtape/matrix/multiply.hpp"

using namespace adtape;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Matrix<Var> var_matrix(Tape& t, std::size_t rows, std::size_t cols,
                       const std::vector<double>& values) {
  std::vector<Var> elems;
  elems.reserve(values.size());
  for (double v : values) elems.push_back(independent(t, v));
  return Matrix<Var>(rows, cols, std::move(elems));
}

}  // namespace

TEST_CASE("1x1 product is the scalar product") {
  Tape t;
  Matrix<Var> a = var_matrix(t, 1, 1, {3.0});
  Matrix<Var> b = var_matrix(t, 1, 1, {-2.0});
  REQUIRE(multiply(a, b)(0, 0).val() == -6.0);
}

TEST_CASE("identity times M preserves values with unit sum-gradients") {
  Tape t;
  Matrix<Var> eye = var_matrix(t, 2, 2, {1.0, 0.0, 0.0, 1.0});
  Matrix<Var> m = var_matrix(t, 2, 2, {4.0, -1.0, 2.5, 7.0});
  Matrix<Var> prod = multiply(eye, m);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c)
      REQUIRE(prod(r, c).val() == m(r, c).val());
  Var total = sum(prod);
  sweep(t, total.node());
  for (const Var& v : m.elements()) REQUIRE(v.adj() == 1.0);
}

TEST_CASE("2x2 numeric product with finite-difference gradients") {
  Tape t;
  Matrix<Var> a = var_matrix(t, 2, 2, {1.0, 2.0, 3.0, 4.0});
  Matrix<Var> b = var_matrix(t, 2, 2, {5.0, 6.0, 7.0, 8.0});
  Matrix<Var> ab = multiply(a, b);
  REQUIRE(ab(0, 0).val() == 19.0);
  REQUIRE(ab(0, 1).val() == 22.0);
  REQUIRE(ab(1, 0).val() == 43.0);
  REQUIRE(ab(1, 1).val() == 50.0);

  auto f_plain = [](const std::vector<double>& x) {
    Matrix<double> ma(2, 2, {x[0], x[1], x[2], x[3]});
    Matrix<double> mb(2, 2, {x[4], x[5], x[6], x[7]});
    return sum(multiply(ma, mb));
  };
  double fx = 0.0;
  std::vector<double> grad;
  gradient(
      [](const std::vector<Var>& x) {
        Matrix<Var> ma(2, 2, {x[0], x[1], x[2], x[3]});
        Matrix<Var> mb(2, 2, {x[4], x[5], x[6], x[7]});
        return sum(multiply(ma, mb));
      },
      {1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0}, fx, grad);
  const auto fd = fd_gradient(f_plain, {1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0});
  for (std::size_t i = 0; i < grad.size(); ++i)
    REQUIRE_THAT(grad[i], WithinAbs(fd[i], 1e-8));
}

TEST_CASE("product node count is exactly rows times cols") {
  Tape t;
  Matrix<Var> a = var_matrix(t, 3, 4, std::vector<double>(12, 1.5));
  Matrix<Var> b = var_matrix(t, 4, 5, std::vector<double>(20, -0.5));
  const std::size_t len = t.len();
  (void)multiply(a, b);
  REQUIRE(t.len() == len + 3 * 5);
}

TEST_CASE("inner dimension mismatch raises a dimension error") {
  Tape t;
  Matrix<Var> a = var_matrix(t, 2, 3, std::vector<double>(6, 1.0));
  Matrix<Var> b = var_matrix(t, 2, 2, std::vector<double>(4, 1.0));
  REQUIRE_THROWS_AS(multiply(a, b), std::invalid_argument);
}

TEST_CASE("mixed products match the all-variable product in value") {
  const std::vector<double> av = {1.0, -2.0, 0.5, 3.0};
  const std::vector<double> bv = {2.0, 0.0, -1.0, 4.0};
  Tape t;
  Matrix<Var> a = var_matrix(t, 2, 2, av);
  Matrix<double> b(2, 2, bv);
  const std::size_t len = t.len();
  Matrix<Var> ab = multiply(a, b);
  REQUIRE(t.len() == len + 4);  // constant factor adds no nodes

  Matrix<double> expect = multiply(Matrix<double>(2, 2, av), Matrix<double>(2, 2, bv));
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c)
      REQUIRE_THAT(ab(r, c).val(), WithinAbs(expect(r, c), 1e-15));

  Matrix<Var> b_var = var_matrix(t, 2, 2, bv);
  Matrix<Var> ab2 = multiply(Matrix<double>(2, 2, av), b_var);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c)
      REQUIRE_THAT(ab2(r, c).val(), WithinAbs(expect(r, c), 1e-15));
}

TEST_CASE("mixed product gradients flow only into the variable factor") {
  Tape t;
  Matrix<Var> a = var_matrix(t, 1, 2, {2.0, 5.0});
  Matrix<double> b(2, 1, {3.0, -1.0});
  Var r = multiply(a, b)(0, 0);
  REQUIRE(r.val() == 1.0);
  sweep(t, r.node());
  REQUIRE(a(0, 0).adj() == 3.0);
  REQUIRE(a(0, 1).adj() == -1.0);
}

TEST_CASE("mixed product against a zero matrix has zero gradients") {
  Tape t;
  Matrix<Var> a = var_matrix(t, 2, 2, {1.0, 2.0, 3.0, 4.0});
  Matrix<double> zeros(2, 2, 0.0);
  Var total = sum(multiply(a, zeros));
  REQUIRE(total.val() == 0.0);
  sweep(t, total.node());
  for (const Var& v : a.elements()) REQUIRE(v.adj() == 0.0);
}

TEST_CASE("self-transpose product of a row vector is its squared norm") {
  Tape t;
  Matrix<Var> a = var_matrix(t, 1, 3, {1.0, 2.0, 3.0});
  Var gram = multiply_self_transpose(a)(0, 0);
  REQUIRE(gram.val() == 14.0);
  sweep(t, gram.node());
  REQUIRE(a(0, 0).adj() == 2.0);
  REQUIRE(a(0, 1).adj() == 4.0);
  REQUIRE(a(0, 2).adj() == 6.0);
}

TEST_CASE("self-transpose of the identity is the identity") {
  Tape t;
  Matrix<Var> eye = var_matrix(t, 2, 2, {1.0, 0.0, 0.0, 1.0});
  Matrix<Var> out = multiply_self_transpose(eye);
  REQUIRE(out(0, 0).val() == 1.0);
  REQUIRE(out(0, 1).val() == 0.0);
  REQUIRE(out(1, 0).val() == 0.0);
  REQUIRE(out(1, 1).val() == 1.0);
}

TEST_CASE("self-transpose values are exactly symmetric") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> values(12);
  for (double& v : values) v = dist(rng);
  Tape t;
  Matrix<Var> a = var_matrix(t, 3, 4, values);
  Matrix<Var> aat = multiply_self_transpose(a);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      REQUIRE(aat(i, j).val() == aat(j, i).val());
}

TEST_CASE("self-transpose matches the transpose-copy product with less arena") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> values(16);
  for (double& v : values) v = dist(rng);

  Tape t1;
  Matrix<Var> a1 = var_matrix(t1, 4, 4, values);
  const std::size_t arena_before_1 = t1.used_bytes();
  Var total1 = sum(multiply_self_transpose(a1));
  const std::size_t arena_cost_shared = t1.used_bytes() - arena_before_1;
  sweep(t1, total1.node());
  std::vector<double> grads1;
  for (const Var& v : a1.elements()) grads1.push_back(v.adj());

  Tape t2;
  Matrix<Var> a2 = var_matrix(t2, 4, 4, values);
  const std::size_t arena_before_2 = t2.used_bytes();
  Var total2 = sum(multiply(a2, a2.transpose()));
  const std::size_t arena_cost_copy = t2.used_bytes() - arena_before_2;
  sweep(t2, total2.node());

  REQUIRE_THAT(total1.val(), WithinAbs(total2.val(), 1e-12));
  std::size_t i = 0;
  for (const Var& v : a2.elements())
    REQUIRE_THAT(grads1[i++], WithinAbs(v.adj(), 1e-12));
  REQUIRE(arena_cost_shared < arena_cost_copy);
}

TEST_CASE("log determinant of the identity is zero with identity gradient") {
  Tape t;
  std::vector<double> eye(16, 0.0);
  for (int i = 0; i < 4; ++i) eye[static_cast<std::size_t>(i) * 5] = 1.0;
  Matrix<Var> m = var_matrix(t, 4, 4, eye);
  Var ld = log_determinant(m);
  REQUIRE_THAT(ld.val(), WithinAbs(0.0, 1e-14));
  sweep(t, ld.node());
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      REQUIRE_THAT(m(r, c).adj(), WithinAbs(r == c ? 1.0 : 0.0, 1e-14));
}

TEST_CASE("log determinant of diag(2, 3) is log 6 with inverse-diagonal gradient") {
  Tape t;
  Matrix<Var> m = var_matrix(t, 2, 2, {2.0, 0.0, 0.0, 3.0});
  Var ld = log_determinant(m);
  REQUIRE_THAT(ld.val(), WithinAbs(std::log(6.0), 1e-12));
  sweep(t, ld.node());
  REQUIRE_THAT(m(0, 0).adj(), WithinAbs(0.5, 1e-12));
  REQUIRE_THAT(m(1, 1).adj(), WithinAbs(1.0 / 3.0, 1e-12));
  REQUIRE_THAT(m(0, 1).adj(), WithinAbs(0.0, 1e-12));
  REQUIRE_THAT(m(1, 0).adj(), WithinAbs(0.0, 1e-12));
}

TEST_CASE("log determinant gradient is the transposed inverse") {
  // 2x2 closed-form inverse as the independent route
  const double a = 1.2, b = 0.4, c = -0.3, d = 2.1;
  const double det = a * d - b * c;
  Tape t;
  Matrix<Var> m = var_matrix(t, 2, 2, {a, b, c, d});
  Var ld = log_determinant(m);
  REQUIRE_THAT(ld.val(), WithinRel(std::log(std::fabs(det)), 1e-12));
  sweep(t, ld.node());
  REQUIRE_THAT(m(0, 0).adj(), WithinAbs(d / det, 1e-10));
  REQUIRE_THAT(m(0, 1).adj(), WithinAbs(-c / det, 1e-10));  // (inv^T)_{01}
  REQUIRE_THAT(m(1, 0).adj(), WithinAbs(-b / det, 1e-10));
  REQUIRE_THAT(m(1, 1).adj(), WithinAbs(a / det, 1e-10));
}

TEST_CASE("log determinant of a well-conditioned 5x5 matches finite differences") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> values(25);
  for (std::size_t i = 0; i < 25; ++i)
    values[i] = dist(rng) + (i % 6 == 0 ? 5.0 : 0.0);  // diagonally dominant

  auto build = [](const std::vector<Var>& v) {
    return log_determinant(Matrix<Var>(5, 5, v));
  };
  double fx = 0.0;
  std::vector<double> grad;
  gradient([&](const std::vector<Var>& v) { return build(v); }, values, fx, grad);
  const auto fd = fd_gradient(
      [](const std::vector<double>& v) {
        return log_determinant(Matrix<double>(5, 5, v));
      },
      values);
  for (std::size_t i = 0; i < grad.size(); ++i)
    REQUIRE_THAT(grad[i], WithinRel(fd[i], 1e-6) || WithinAbs(fd[i], 1e-8));
}

TEST_CASE("log determinant of a product doubles the single value") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> values(9);
  for (std::size_t i = 0; i < 9; ++i) values[i] = dist(rng) + (i % 4 == 0 ? 4.0 : 0.0);

  Tape t;
  Matrix<Var> m = var_matrix(t, 3, 3, values);
  const double single = log_determinant(m).val();
  const double squared = log_determinant(multiply(m, m)).val();
  REQUIRE_THAT(squared, WithinAbs(2.0 * single, 1e-10));
}

TEST_CASE("log determinant rejects non-square input") {
  Tape t;
  Matrix<Var> m = var_matrix(t, 2, 3, std::vector<double>(6, 1.0));
  REQUIRE_THROWS_AS(log_determinant(m), std::invalid_argument);
}

TEST_CASE("a singular value matrix yields -inf without throwing") {
  Tape t;
  Matrix<Var> m = var_matrix(t, 2, 2, {1.0, 2.0, 2.0, 4.0});
  Var ld = log_determinant(m);
  REQUIRE(std::isinf(ld.val()));
  REQUIRE(ld.val() < 0.0);
}

TEST_CASE("matrix shape validation") {
  REQUIRE_THROWS_AS(Matrix<double>(0, 2, std::vector<double>{}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(Matrix<double>(2, 2, std::vector<double>(3, 0.0)),
                    std::invalid_argument);
}
