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

#ifndef SUBSEARCH_SCHED_HPP_
#define SUBSEARCH_SCHED_HPP_

#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "subsearch/sidney.hpp"

namespace subsearch {

/// Concave nondecreasing transform of completion times. Identity and Table
/// evaluate in either arithmetic mode; Power, Log and ExpDiscount force
/// float mode.
struct HSpec {
  enum class Kind { kIdentity, kPower, kLog, kExpDiscount, kTable };

  Kind kind = Kind::kIdentity;
  double param = 0.0;  // beta for Power, a for Log, r for ExpDiscount
  std::vector<std::pair<Value, Value>> table;  // (y, h(y)), y increasing

  static HSpec identity() { return HSpec{}; }
  static HSpec power(double beta);
  static HSpec log(double a);
  static HSpec exp_discount(double r);
  static HSpec piecewise(std::vector<std::pair<Value, Value>> samples);

  bool requires_float() const {
    return kind == Kind::kPower || kind == Kind::kLog ||
           kind == Kind::kExpDiscount;
  }

  /// Checks parameters; tables must start at (0,0), be nondecreasing and
  /// have nonincreasing slopes.
  void validate() const;

  Value apply(const Value& y) const;
};

/// Single-machine instance: jobs with processing times, precedence edges
/// (s,t) meaning s must complete before t, and either per-job weights or a
/// sparse table of subset weights.
struct PrecedenceInstance {
  std::vector<std::string> jobs;  // labels, size n
  std::vector<std::pair<int, int>> edges;
  std::vector<Value> p;  // processing times, positive
  std::vector<Value> weights;  // per-job weights; empty in subset mode
  std::vector<std::pair<Mask, Value>> subset_weights;  // empty in per-job mode
  HSpec h;
  NumericMode mode = NumericMode::kRational;

  int n() const { return static_cast<int>(jobs.size()); }
};

/// Rooted tree with positive edge costs; the searchable elements are the
/// non-root vertices, identified with their parent edges.
struct RootedTree {
  int root = 0;
  std::vector<std::tuple<int, int, Value>> edges;  // (u, v, cost)
};

/// f(A) = h(total processing time of the precedence closure of A).
/// Submodular and nondecreasing; rejects cyclic precedence graphs.
SetFunctionPtr cost_oracle(const PrecedenceInstance& instance);

/// g(A) = sum of w_B over B inside A (supermodular); per-job weights give a
/// modular oracle. Rejects negative weights.
SetFunctionPtr weight_oracle(const PrecedenceInstance& instance);

/// f(A) = total cost of the minimal subtree spanning A and the root.
SetFunctionPtr tree_cost_oracle(const RootedTree& tree);

/// h composed with an inner oracle. Concave nondecreasing h preserves
/// submodularity and monotonicity of the inner function.
SetFunctionPtr compose_concave(HSpec h, SetFunctionPtr inner);

/// Nonincreasing w_j / p_j, ties by ascending index.
SearchOrder smith_rule(std::span<const Value> p, std::span<const Value> w);

enum class SolveMethod { kSidney, kSpd, kBrute };

/// Solves the scheduling instance through the search solvers and repairs the
/// emitted order to respect the precedence constraints (which never changes
/// the certified bounds, and keeps exact methods exact).
CostReport schedule(const PrecedenceInstance& instance, SolveMethod method);

/// Reorders `order` so every job follows its predecessors: jobs are emitted
/// in order of first appearance, each preceded by its pending ancestors.
SearchOrder precedence_repair(const PrecedenceInstance& instance,
                              const SearchOrder& order);

/// Precedence graph with an explicit vertex set, for series/parallel
/// composition.
struct Dag {
  std::vector<int> vertices;
  std::vector<std::pair<int, int>> edges;
};

enum class GspKind { kSeries, kParallel };

/// Parallel composition is the disjoint union; series composition adds every
/// edge from the first vertex set to the second. Overlapping vertex sets are
/// rejected.
Dag gsp_compose(GspKind kind, const Dag& a, const Dag& b);

/// Approximation ratio 2 / (2 - kappa) for weighted concave completion times
/// without precedence constraints, where 1 - kappa = h'(total) / h'(0).
/// Rejects h'(0) = 0 and flags tables whose derivative and limit forms
/// disagree.
Value noprec_ratio(const HSpec& h, const Value& total);

}  // namespace subsearch

#endif  // SUBSEARCH_SCHED_HPP_
