// Copyright 2026 The subsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "subsearch/game.hpp"

#include <doctest.h>

#include <algorithm>

#include "subsearch/sidney.hpp"
#include "test_util.hpp"

using namespace subsearch;
using namespace testutil;

namespace {

HiderStrategy strategy(std::vector<Value> x) { return HiderStrategy{std::move(x)}; }

Value min_pure_cost(const SetFunction& f, const HiderStrategy& x) {
  SearchOrder order = SearchOrder::identity(f.n());
  std::optional<Value> best;
  do {
    Value c = search_cost_modular(f, x, order);
    if (!best || c < *best) best = c;
  } while (std::next_permutation(order.perm.begin(), order.perm.end()));
  return *best;
}

}  // namespace

TEST_CASE("search cost against a hider distribution") {
  SetFunctionPtr f = modular_of(rationals({{1, 1}, {2, 1}}));
  CHECK(search_cost_modular(*f, strategy({Q(1, 3), Q(2, 3)}),
                            SearchOrder{{0, 1}}) == Q(7, 3));
  // Unit mass: the cost is the prefix cost at the hiding spot.
  CHECK(search_cost_modular(*f, strategy({Q(0), Q(1)}),
                            SearchOrder{{0, 1}}) == Q(3));
  SetFunctionPtr single = modular_of({Q(4)});
  CHECK(search_cost_modular(*single, strategy({Q(1)}), SearchOrder{{0}}) ==
        Q(4));
}

TEST_CASE("scaled base polyhedron membership") {
  SetFunctionPtr f = modular_of(rationals({{1, 1}, {2, 1}}));
  auto [ok, witness] = in_scaled_base_polyhedron(*f, strategy({Q(1, 3), Q(2, 3)}));
  CHECK(ok);
  auto [bad, bad_witness] =
      in_scaled_base_polyhedron(*f, strategy({Q(1, 2), Q(1, 2)}));
  CHECK_FALSE(bad);
  REQUIRE(bad_witness.has_value());
  CHECK(*bad_witness == 0b01);
}

TEST_CASE("modular game closed form") {
  GameSolution two = modular_game_solution(*modular_of(rationals({{1, 1}, {2, 1}})));
  CHECK(two.hider.x == std::vector<Value>{Q(1, 3), Q(2, 3)});
  CHECK(two.phi == Q(5, 3));
  CHECK(two.value == Q(7, 3));

  GameSolution uniform = modular_game_solution(*uniform_modular(4));
  CHECK(uniform.value == Q(5, 8));  // (n+1)/2 scaled by f(S) = 1
  for (const Value& xs : uniform.hider.x) CHECK(xs == Q(1, 4));

  GameSolution one = modular_game_solution(*modular_of({Q(6)}));
  CHECK(one.value == Q(6));

  CHECK_THROWS_AS(modular_game_solution(*f3_cost()), std::invalid_argument);
}

TEST_CASE("series-parallel game solution") {
  auto path = game_value_spd(*path_tree_cost());
  REQUIRE(path);
  CHECK(path->value == Q(2));
  CHECK(path->phi == Q(2));
  CHECK(path->hider.x == std::vector<Value>{Q(0), Q(1)});

  auto mod = game_value_spd(*modular_of(rationals({{1, 1}, {2, 1}})));
  REQUIRE(mod);
  CHECK(mod->value == Q(7, 3));
  CHECK(mod->hider.x == std::vector<Value>{Q(1, 3), Q(2, 3)});
  REQUIRE(mod->searcher->kind == SearcherStrategy::Kind::kParallel);
  CHECK(mod->searcher->q == Q(1, 3));

  auto single = game_value_spd(*modular_of({Q(5)}));
  REQUIRE(single);
  CHECK(single->value == Q(5));
  CHECK(single->hider.x == std::vector<Value>{Q(1)});

  CHECK_FALSE(game_value_spd(*f3_cost()).has_value());
}

TEST_CASE("value formula holds on decomposable fixtures") {
  for (int n = 2; n <= 6; ++n) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      SearchInstance carrier = generated("tree", n, 1000 * n + seed);
      const SetFunction& f = carrier.f();
      auto solution = game_value_spd(f);
      REQUIRE(solution);
      Value ftotal = f.eval(full_mask(n));
      REQUIRE(solution->value == (ftotal + solution->phi) / 2);
      REQUIRE(solution->value >= ftotal / 2);
      REQUIRE(solution->value <= ftotal);
      auto [in_poly, witness] = in_scaled_base_polyhedron(f, solution->hider);
      REQUIRE(in_poly);
    }
  }
}

TEST_CASE("expected cost vector equalizes at the value") {
  SetFunctionPtr f = modular_of(rationals({{1, 1}, {2, 1}}));
  auto solution = game_value_spd(*f);
  REQUIRE(solution);
  std::vector<Value> costs = expected_cost_vector(*f, *solution->searcher);
  CHECK(costs == std::vector<Value>{Q(7, 3), Q(7, 3)});

  // A fixed pure order prices every element at its prefix cost.
  SearcherStrategy pure;
  pure.kind = SearcherStrategy::Kind::kLeafOrder;
  pure.subset = 0b11;
  pure.order = {1, 0};
  CHECK(expected_cost_vector(*f, pure) == std::vector<Value>{Q(3), Q(2)});

  SetFunctionPtr single = modular_of({Q(4)});
  auto one = game_value_spd(*single);
  CHECK(expected_cost_vector(*single, *one->searcher) ==
        std::vector<Value>{Q(4)});
}

TEST_CASE("equalization and best responses on decomposable fixtures") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    SearchInstance carrier = generated("tree", 5, 4400 + seed);
    const SetFunction& f = carrier.f();
    auto solution = game_value_spd(f);
    REQUIRE(solution);
    std::vector<Value> costs = expected_cost_vector(f, *solution->searcher);
    for (const Value& c : costs) REQUIRE(c == solution->value);
    // The Hider strategy guarantees the value against every pure order.
    REQUIRE(min_pure_cost(f, solution->hider) == solution->value);
    // Optimal pure responses start with a maximum-density subset.
    SearchInstance response(
        SetFunctionPtr(&f, [](const SetFunction*) {}),
        make_modular(f.ground(), f.mode(), solution->hider.x));
    Mask dense = max_density_subset(response).set;
    auto [cost, argmins] = enumerate_optimal_orders(response);
    REQUIRE(cost == solution->value);
    for (const SearchOrder& order : argmins) {
      Mask prefix = 0;
      for (int i = 0; i < mask_size(dense); ++i) prefix |= bit(order.perm[i]);
      REQUIRE(prefix == dense);
    }
  }
}

TEST_CASE("first-then-uniform sampler evaluates exactly") {
  GameSolution uniform = modular_game_solution(*uniform_modular(3));
  std::vector<Value> costs =
      expected_cost_vector(*uniform_modular(3), *uniform.searcher);
  for (const Value& c : costs) CHECK(c == uniform.value);
}

TEST_CASE("curvature approximation strategies") {
  auto modular_case = curvature_approx_strategies(*modular_of(rationals({{1, 1}, {2, 1}})));
  CHECK(modular_case.factor == Q(1));
  CHECK(modular_case.hider.x == std::vector<Value>{Q(1, 3), Q(2, 3)});

  // kappa = 1/4: singletons cost 2, the pair 7/2.
  SetFunctionPtr quarter = make_tabular(GroundSet(2), NumericMode::kRational,
                                        {Q(0), Q(2), Q(2), Q(7, 2)},
                                        submodular_flags());
  CHECK(curvature_approx_strategies(*quarter).factor == Q(4, 3));

  CHECK_THROWS_AS(curvature_approx_strategies(*f3_cost()), std::domain_error);
}

TEST_CASE("curvature strategies meet the oracle guarantee") {
  // Submodular with curvature 1/4 on three elements.
  std::vector<Value> table = {Q(0),    Q(2), Q(2),    Q(15, 4),
                              Q(2),    Q(15, 4), Q(15, 4), Q(21, 4)};
  SetFunctionPtr f = make_tabular(GroundSet(3), NumericMode::kRational, table,
                                  submodular_flags());
  Value kappa = curvature(*f);
  REQUIRE(kappa < Q(1, 2));
  CurvatureStrategies approx = curvature_approx_strategies(*f);
  Value value = matrix_game_solve(*f).value;
  Value worst_hiding = best_response_hider(*f, *approx.searcher).second;
  REQUIRE(worst_hiding * (Q(1) - kappa) <= value);
  REQUIRE(min_pure_cost(*f, approx.hider) >= (Q(1) - kappa) * value);
}

TEST_CASE("matrix game oracle") {
  SetFunctionPtr f = modular_of(rationals({{1, 1}, {2, 1}}));
  MatrixGameResult lp = matrix_game_solve(*f);
  CHECK(lp.value == Q(7, 3));
  CHECK(lp.lower == lp.upper);
  CHECK(lp.hider == std::vector<Value>{Q(1, 3), Q(2, 3)});

  MatrixGameOptions fp_options;
  fp_options.method = MatrixGameMethod::kFictitiousPlay;
  MatrixGameResult fp = matrix_game_solve(*f, fp_options);
  CHECK(fp.lower.to_double() <= 7.0 / 3.0 + 1e-9);
  CHECK(fp.upper.to_double() >= 7.0 / 3.0 - 1e-9);
  CHECK(fp.upper.to_double() - fp.lower.to_double() <= fp_options.tol + 1e-12);

  SetFunctionPtr single = modular_of({Q(9)});
  CHECK(matrix_game_solve(*single).value == Q(9));

  MatrixGameResult path = matrix_game_solve(*path_tree_cost());
  CHECK(path.value == Q(2));
}

TEST_CASE("lp oracle agrees with the recursive solution") {
  for (int n = 2; n <= 5; ++n) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      SearchInstance carrier = generated("tree", n, 31 * n + seed);
      const SetFunction& f = carrier.f();
      auto solution = game_value_spd(f);
      REQUIRE(solution);
      MatrixGameResult oracle = matrix_game_solve(f);
      REQUIRE(oracle.value == solution->value);
      HiderStrategy oracle_hider{oracle.hider};
      auto [in_poly, witness] = in_scaled_base_polyhedron(f, oracle_hider);
      REQUIRE(in_poly);
    }
  }
}

TEST_CASE("best responses") {
  SetFunctionPtr f = modular_of(rationals({{1, 1}, {2, 1}, {3, 1}}));
  SearcherStrategy pure;
  pure.kind = SearcherStrategy::Kind::kLeafOrder;
  pure.subset = 0b111;
  pure.order = {0, 1, 2};
  auto [spot, worst] = best_response_hider(*f, pure);
  CHECK(spot == 2);  // strictly increasing prefix costs
  CHECK(worst == Q(6));

  auto [order, cost] = best_response_searcher(*f, strategy({Q(0), Q(0), Q(1)}));
  CHECK(cost == Q(3));  // modular cost: pay f({3}) by searching it first

  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    SearchInstance carrier = generated("tree", 4, 660 + seed);
    const SetFunction& fx = carrier.f();
    GameSolution surrogate = modular_game_solution(
        *modular_of({fx.eval(0b0001), fx.eval(0b0010), fx.eval(0b0100),
                     fx.eval(0b1000)}));
    auto [br_order, br_cost] = best_response_searcher(fx, surrogate.hider);
    REQUIRE(br_cost == min_pure_cost(fx, surrogate.hider));
  }
}

TEST_CASE("any reasonable strategy is within a factor two") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    SearchInstance carrier = generated("tree", 4, 9100 + seed);
    const SetFunction& f = carrier.f();
    Value value = matrix_game_solve(f).value;

    auto solution = game_value_spd(f);
    REQUIRE(solution);
    // Any hider point of the scaled base polyhedron guarantees half the
    // value; the equilibrium point certainly qualifies.
    REQUIRE(min_pure_cost(f, solution->hider) >= value / 2);

    // Any searcher strategy concedes at most twice the value; try a fixed
    // order and the first-then-uniform surrogate.
    SearcherStrategy pure;
    pure.kind = SearcherStrategy::Kind::kLeafOrder;
    pure.subset = full_mask(4);
    pure.order = {0, 1, 2, 3};
    REQUIRE(best_response_hider(f, pure).second <= 2 * value);
    CurvatureStrategies approx_ok = [&] {
      CurvatureStrategies out;
      std::vector<Value> singles;
      for (int s = 0; s < 4; ++s) singles.push_back(f.eval(bit(s)));
      GameSolution surrogate = modular_game_solution(*modular_of(singles));
      out.hider = surrogate.hider;
      out.searcher = std::move(surrogate.searcher);
      out.factor = Q(1);
      return out;
    }();
    REQUIRE(best_response_hider(f, *approx_ok.searcher).second <= 2 * value);
  }
}
