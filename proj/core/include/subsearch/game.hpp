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

#ifndef SUBSEARCH_GAME_HPP_
#define SUBSEARCH_GAME_HPP_

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "subsearch/instance.hpp"

namespace subsearch {

/// Hider mixed strategy: a probability distribution over hiding locations.
struct HiderStrategy {
  std::vector<Value> x;
};

/// Compact recursive sampler for Searcher mixed strategies. Series nodes
/// search a fixed prefix then delegate; parallel nodes flip a biased coin for
/// which side goes first; FirstThenUniform picks a first element by the given
/// distribution and completes uniformly at random.
struct SearcherStrategy {
  enum class Kind { kLeafOrder, kSeries, kParallel, kFirstThenUniform };

  Kind kind = Kind::kLeafOrder;
  Mask subset = 0;  // original elements covered by this node

  std::vector<int> order;  // kLeafOrder: fixed permutation of the subset

  std::vector<int> prefix;  // kSeries: searched first, in this order
  std::unique_ptr<SearcherStrategy> rest;

  Value q;  // kParallel: probability the first side is searched first
  std::unique_ptr<SearcherStrategy> first_side, second_side;

  std::vector<std::pair<int, Value>> first_prob;  // kFirstThenUniform
};

struct GameSolution {
  Value value;  // V
  Value phi;    // sum_s x(s) f(s)
  HiderStrategy hider;
  std::unique_ptr<SearcherStrategy> searcher;
};

/// Search cost of the pure order against a Hider distribution, i.e. the
/// expected cost with the modular weight function g = x.
Value search_cost_modular(const SetFunction& f, const HiderStrategy& x,
                          const SearchOrder& order);

/// Checks x(A) <= f(A) / f(S) for every A together with x(S) = 1. Returns the
/// first violating subset if any. Exhaustive, n <= 20. `tol` loosens the
/// checks for strategies produced by floating-point solvers.
std::pair<bool, std::optional<Mask>> in_scaled_base_polyhedron(
    const SetFunction& f, const HiderStrategy& x, double tol = 0.0);

/// Equilibrium of the game with a modular cost function: the Hider plays
/// x(s) = f(s)/f(S) and the Searcher starts at s with probability x(s),
/// finishing uniformly at random.
GameSolution modular_game_solution(const SetFunction& f);

/// Exact equilibrium for series-parallel decomposable cost functions (the
/// game decomposes along f-initial sets and separators of f alone). Returns
/// nullopt when f is not decomposable. The value satisfies
/// V = (f(S) + Phi) / 2.
std::optional<GameSolution> game_value_spd(const SetFunction& f);

/// Exact expected cost the sampler strategy pays for each hiding location,
/// computed recursively without sampling.
std::vector<Value> expected_cost_vector(const SetFunction& f,
                                        const SearcherStrategy& strategy);

struct CurvatureStrategies {
  HiderStrategy hider;
  std::unique_ptr<SearcherStrategy> searcher;
  Value factor;  // 1 / (1 - kappa)
};

/// Equilibrium strategies of the modular surrogate h(A) = sum of f(s), which
/// approximate the true equilibrium within 1/(1-kappa) when the total
/// curvature kappa of f is below 1/2.
CurvatureStrategies curvature_approx_strategies(const SetFunction& f);

enum class MatrixGameMethod { kFictitiousPlay, kExactLp };

struct MatrixGameOptions {
  MatrixGameMethod method = MatrixGameMethod::kExactLp;
  long iterations = 200000;  // fictitious play cap
  double tol = 1e-3;         // stop once the certified gap is this small
};

struct MatrixGameResult {
  Value value;
  Value lower, upper;  // certified bounds from best responses
  std::vector<std::pair<SearchOrder, Value>> searcher;  // sparse row mixture
  std::vector<Value> hider;
  long iterations = 0;
};

/// Brute-force oracle over all n! pure search orders (n <= 7). Fictitious
/// play reports certified bounds; the exact LP backend solves the game with
/// rational pivoting and returns the exact value.
MatrixGameResult matrix_game_solve(const SetFunction& f,
                                   const MatrixGameOptions& options = {});

/// Worst hiding location against a sampler strategy (ties to lowest index).
std::pair<int, Value> best_response_hider(const SetFunction& f,
                                          const SearcherStrategy& strategy);

/// Optimal pure search order against a Hider distribution, via the subset
/// dynamic program on (f, modular(x)).
std::pair<SearchOrder, Value> best_response_searcher(const SetFunction& f,
                                                     const HiderStrategy& x);

}  // namespace subsearch

#endif  // SUBSEARCH_GAME_HPP_
