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

#ifndef SUBSEARCH_SIDNEY_HPP_
#define SUBSEARCH_SIDNEY_HPP_

#include <utility>
#include <vector>

#include "subsearch/density.hpp"
#include "subsearch/instance.hpp"

namespace subsearch {

/// Expected search cost c(pi) = sum_j (g(S_j) - g(S_j - j)) * f(S_j), where
/// S_j is the prefix of pi up to and including j.
Value expected_cost(const SearchInstance& instance, const SearchOrder& order);

/// epsilon(pi) = sum_j (marginal of j in f) * (marginal of j in g) along pi.
Value epsilon(const SearchInstance& instance, const SearchOrder& order);

/// Orders by nonincreasing f({j}) and by nonincreasing g#({j}), ties by
/// ascending index. The first satisfies (1 - kappa_f) eps(pi1) <= min eps,
/// the second the analogous bound for the dual curvature.
std::pair<SearchOrder, SearchOrder> epsilon_greedy_orders(
    const SearchInstance& instance);

/// Ordered partition into maximal maximum-density blocks of the successively
/// contracted instances. Every optimal search respects the block order.
struct Decomposition {
  std::vector<Mask> blocks;  // original-index masks, in search order
  std::vector<Value> rhos;   // block densities in their contracted instances
};

Decomposition sidney_decomposition(const SearchInstance& instance);

struct CostReport {
  SearchOrder order;
  Value cost;
  Value lower_bound;  // certified lower bound on the optimal cost
  Value ratio_bound;  // cost <= ratio_bound * lower_bound (always 2 here)
};

/// Concatenates the decomposition blocks, elements within a block in
/// ascending index. The cost is at most twice the optimum.
CostReport two_approx_search(const SearchInstance& instance);

/// Exact optimum by dynamic programming over prefix subsets (n <= 16).
/// Ties resolve to the lexicographically smallest optimal permutation.
std::pair<SearchOrder, Value> brute_force_optimal(
    const SearchInstance& instance);

/// Full permutation scan (n <= 9). Returns the optimal cost and every
/// optimal order, in lexicographic order. Independent of the DP above.
std::pair<Value, std::vector<SearchOrder>> enumerate_optimal_orders(
    const SearchInstance& instance);

struct CurvatureReport {
  Value kappa_f;
  Value kappa_gsharp;
  Value theta;  // (1 - kappa_f) * (1 - kappa_gsharp)
};

CurvatureReport curvature_report(const SearchInstance& instance);

/// Approximation ratio 2 / (1 + delta) with
/// delta = min(theta, 2 theta max(1-kappa_f, 1-kappa_g#) / (1+theta));
/// returns 2 when either curvature equals 1.
Value curvature_ratio_bound(const SearchInstance& instance);

}  // namespace subsearch

#endif  // SUBSEARCH_SIDNEY_HPP_
