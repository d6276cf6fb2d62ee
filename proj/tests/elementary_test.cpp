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

#include "adtape/core/sweep.hpp"
#include "adtape/functional/finite_diff.hpp"
#include "adtape/functional/gradient.hpp"
#include "adtape/functions/elementary.hpp"

using namespace adtape;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// value and d/dx of a single-input builder
std::pair<double, double> eval_with_grad(double x0, auto&& build) {
  Tape t;
  Var x = independent(t, x0);
  Var f = build(x);
  sweep(t, f.node());
  return {f.val(), x.adj()};
}

}  // namespace

TEST_CASE("log values and derivatives at cardinal points") {
  auto [v1, g1] = eval_with_grad(1.0, [](Var x) { return log(x); });
  REQUIRE(v1 == 0.0);
  REQUIRE(g1 == 1.0);

  const double e = std::exp(1.0);
  auto [ve, ge] = eval_with_grad(e, [](Var x) { return log(x); });
  REQUIRE_THAT(ve, WithinAbs(1.0, 1e-15));
  REQUIRE_THAT(ge, WithinRel(1.0 / e, 1e-15));

  // the scale-parameter term of a log density pulls in -1/sigma
  auto [vs, gs] = eval_with_grad(1.2, [](Var x) { return -log(x); });
  REQUIRE_THAT(vs, WithinRel(-std::log(1.2), 1e-15));
  REQUIRE_THAT(gs, WithinRel(-1.0 / 1.2, 1e-15));
}

TEST_CASE("exp, square and sqrt at simple points") {
  auto [ve, ge] = eval_with_grad(0.0, [](Var x) { return exp(x); });
  REQUIRE(ve == 1.0);
  REQUIRE(ge == 1.0);

  auto [vsq, gsq] = eval_with_grad(3.0, [](Var x) { return square(x); });
  REQUIRE(vsq == 9.0);
  REQUIRE(gsq == 6.0);

  auto [vr, gr] = eval_with_grad(4.0, [](Var x) { return sqrt(x); });
  REQUIRE(vr == 2.0);
  REQUIRE(gr == 0.25);
}

TEST_CASE("pow with exponent 1 returns the base handle itself") {
  Tape t;
  Var v = independent(t, 3.0);
  const std::size_t len = t.len();
  Var p = pow(v, 1.0);
  REQUIRE(t.len() == len);
  REQUIRE(p.node() == v.node());
}

TEST_CASE("pow with exponent 2 routes to square") {
  Tape t;
  Var v = independent(t, 3.0);
  const std::size_t before = t.len();
  Var p = pow(v, 2.0);
  const std::size_t pow_nodes = t.len() - before;
  Var s = square(v);
  const std::size_t square_nodes = t.len() - before - pow_nodes;
  REQUIRE(pow_nodes == square_nodes);
  REQUIRE(p.val() == 9.0);
  sweep(t, p.node());
  REQUIRE(v.adj() == 6.0);
  REQUIRE(s.val() == 9.0);
}

TEST_CASE("pow with exponent one half routes to sqrt") {
  auto [v, g] = eval_with_grad(4.0, [](Var x) { return pow(x, 0.5); });
  REQUIRE(v == 2.0);
  REQUIRE(g == 0.25);
}

TEST_CASE("pow of a constant base differentiates the exponent") {
  auto [v, g] = eval_with_grad(3.0, [](Var y) { return pow(2.0, y); });
  REQUIRE_THAT(v, WithinRel(8.0, 1e-15));
  REQUIRE_THAT(g, WithinRel(8.0 * std::log(2.0), 1e-12));
}

TEST_CASE("pow(v, v) agrees with exp(v log v)") {
  for (double x0 : {0.4, 1.0, 1.7, 3.2}) {
    double f1 = 0.0, f2 = 0.0;
    std::vector<double> g1, g2;
    gradient([](const std::vector<Var>& v) { return pow(v[0], v[0]); }, {x0}, f1, g1);
    gradient([](const std::vector<Var>& v) { return exp(v[0] * log(v[0])); }, {x0},
             f2, g2);
    REQUIRE_THAT(f1, WithinRel(f2, 1e-12));
    REQUIRE_THAT(g1[0], WithinRel(g2[0], 1e-12));
  }
}

TEST_CASE("pow at a zero base contributes nothing to other adjoints") {
  Tape t;
  Var x = independent(t, 0.0);
  Var y = independent(t, 3.0);
  Var f = pow(x, y) + x + y;
  sweep(t, f.node());
  REQUIRE(x.adj() == 1.0);
  REQUIRE(y.adj() == 1.0);
  REQUIRE(std::isfinite(x.adj()));
}

TEST_CASE("function nodes carry no stored partials") {
  Tape t;
  Var x = independent(t, 1.3);
  Var y = independent(t, 2.1);
  const std::size_t base = t.len();
  (void)log(x);
  (void)exp(x);
  (void)sqrt(x);
  (void)square(x);
  (void)pow(x, y);
  for (std::size_t i = base; i < t.len(); ++i)
    REQUIRE(t[NodeId{i}].constants().empty());
  // mixed power nodes store the one constant they need
  const std::size_t mixed = t.len();
  (void)pow(x, 3.0);
  (void)pow(3.0, x);
  for (std::size_t i = mixed; i < t.len(); ++i)
    REQUIRE(t[NodeId{i}].constants().size() == 1);
}

TEST_CASE("elementary gradients match finite differences at generic points") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> positive(0.1, 10.0);
  auto check = [&](auto&& ad_fun, auto&& plain_fun, double x0) {
    double fx = 0.0;
    std::vector<double> grad;
    gradient([&](const std::vector<Var>& v) { return ad_fun(v[0]); }, {x0}, fx, grad);
    const std::vector<double> fd =
        fd_gradient([&](const std::vector<double>& v) { return plain_fun(v[0]); }, {x0});
    REQUIRE_THAT(grad[0], WithinRel(fd[0], 1e-6) || WithinAbs(fd[0], 1e-9));
  };
  for (int rep = 0; rep < 30; ++rep) {
    const double x0 = positive(rng);
    check([](Var x) { return log(x); }, [](double x) { return std::log(x); }, x0);
    check([](Var x) { return exp(x); }, [](double x) { return std::exp(x); }, x0);
    check([](Var x) { return sqrt(x); }, [](double x) { return std::sqrt(x); }, x0);
    check([](Var x) { return square(x); }, [](double x) { return x * x; }, x0);
    check([](Var x) { return pow(x, 1.7); }, [](double x) { return std::pow(x, 1.7); },
          x0);
    check([](Var x) { return pow(1.7, x); }, [](double x) { return std::pow(1.7, x); },
          x0);
  }
}
