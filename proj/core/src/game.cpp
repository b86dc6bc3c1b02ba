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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "subsearch/errors.hpp"
#include "subsearch/sidney.hpp"
#include "subsearch/spd.hpp"

namespace subsearch {

namespace {

void require_distribution_shape(const SetFunction& f, const HiderStrategy& x) {
  if (static_cast<int>(x.x.size()) != f.n())
    throw std::invalid_argument("hider strategy size mismatch");
}

SetFunctionPtr modular_from(const SetFunction& f, const HiderStrategy& x) {
  return make_modular(f.ground(), f.mode(), x.x);
}

bool is_modular_function(const SetFunction& f) {
  if (f.declared().modular) return true;
  if (f.n() > 16) return false;
  const Mask full = full_mask(f.n());
  std::vector<Value> singles;
  for (int s = 0; s < f.n(); ++s) singles.push_back(f.eval(bit(s)));
  for (Mask a = 0; a <= full; ++a) {
    Value sum = Value::zero(f.mode());
    for (int s : mask_elements(a)) sum += singles[s];
    if (!(f.eval(a) == sum)) return false;
  }
  return true;
}

std::unique_ptr<SearcherStrategy> first_then_uniform_node(
    Mask subset, const std::vector<std::pair<int, Value>>& first_prob) {
  auto node = std::make_unique<SearcherStrategy>();
  node->kind = SearcherStrategy::Kind::kFirstThenUniform;
  node->subset = subset;
  node->first_prob = first_prob;
  return node;
}

// Equilibrium of the game whose cost is the modular function with the given
// singleton values; shared by the exact modular solution and the curvature
// surrogate.
GameSolution modular_equilibrium(const SetFunction& f,
                                 const std::vector<Value>& singles) {
  const int n = static_cast<int>(singles.size());
  Value total = Value::zero(f.mode());
  for (const Value& v : singles) {
    if (v.sign() <= 0)
      throw std::domain_error("equilibrium needs positive singleton values");
    total += v;
  }
  GameSolution solution;
  solution.hider.x.reserve(singles.size());
  std::vector<std::pair<int, Value>> first_prob;
  Value phi = Value::zero(f.mode());
  for (int s = 0; s < n; ++s) {
    Value xs = singles[s] / total;
    solution.hider.x.push_back(xs);
    first_prob.push_back({s, xs});
    phi += xs * singles[s];
  }
  solution.phi = phi;
  solution.value = (total + phi) / 2;
  solution.searcher = first_then_uniform_node(full_mask(n), first_prob);
  return solution;
}

}  // namespace

Value search_cost_modular(const SetFunction& f, const HiderStrategy& x,
                          const SearchOrder& order) {
  require_distribution_shape(f, x);
  SearchInstance instance(
      std::shared_ptr<const SetFunction>(&f, [](const SetFunction*) {}),
      modular_from(f, x));
  return expected_cost(instance, order);
}

std::pair<bool, std::optional<Mask>> in_scaled_base_polyhedron(
    const SetFunction& f, const HiderStrategy& x, double tol) {
  require_distribution_shape(f, x);
  const int n = f.n();
  if (n > 20)
    throw CapacityError("base polyhedron membership check limited to n <= 20");
  const Mask full = full_mask(n);
  Value ftotal = f.eval(full);
  if (ftotal.sign() <= 0)
    throw std::domain_error("f(S) must be positive");

  if (tol > 0.0) {
    // Tolerant check, for strategies from floating-point solvers.
    double ft = ftotal.to_double();
    double sum = 0.0;
    for (const Value& v : x.x) sum += v.to_double();
    if (std::abs(sum - 1.0) > tol) return {false, std::nullopt};
    for (Mask a = 1; a <= full; ++a) {
      double xa = 0.0;
      for (int s : mask_elements(a)) xa += x.x[s].to_double();
      if (xa > f.eval(a).to_double() / ft + tol) return {false, a};
    }
    return {true, std::nullopt};
  }

  Value sum = Value::zero(f.mode());
  for (const Value& v : x.x) sum += v;
  if (!(sum == Value::from_int(1, f.mode()))) return {false, std::nullopt};
  for (Mask a = 1; a <= full; ++a) {
    Value xa = Value::zero(f.mode());
    for (int s : mask_elements(a)) xa += x.x[s];
    if (xa * ftotal > f.eval(a)) return {false, a};
  }
  return {true, std::nullopt};
}

GameSolution modular_game_solution(const SetFunction& f) {
  if (!is_modular_function(f))
    throw std::invalid_argument("modular_game_solution needs a modular f");
  std::vector<Value> singles;
  for (int s = 0; s < f.n(); ++s) singles.push_back(f.eval(bit(s)));
  return modular_equilibrium(f, singles);
}

CurvatureStrategies curvature_approx_strategies(const SetFunction& f) {
  Value kappa = curvature(f);
  Value half = Value::from_int(1, f.mode()) / 2;
  if (!(kappa < half))
    throw std::domain_error(
        "curvature approximation requires total curvature below 1/2");
  std::vector<Value> singles;
  for (int s = 0; s < f.n(); ++s) singles.push_back(f.eval(bit(s)));
  GameSolution surrogate = modular_equilibrium(f, singles);
  CurvatureStrategies out;
  out.hider = std::move(surrogate.hider);
  out.searcher = std::move(surrogate.searcher);
  out.factor = Value::from_int(1, f.mode()) / (Value::from_int(1, f.mode()) - kappa);
  return out;
}

namespace {

struct GameNode {
  Value value;
  Value phi;                    // node-local potential
  std::vector<Value> x_local;   // indexed by node-local element
  std::unique_ptr<SearcherStrategy> searcher;
};

Mask orig_mask_of(const std::vector<int>& to_orig, Mask local) {
  Mask out = 0;
  for (int i : mask_elements(local)) out |= bit(to_orig[i]);
  return out;
}

std::optional<GameNode> solve_game_node(const SetFunctionPtr& f,
                                        const std::vector<int>& to_orig) {
  const int n = f->n();
  const Mask full = full_mask(n);

  if (n == 1) {
    GameNode node;
    node.value = f->eval(full);
    node.phi = node.value;
    node.x_local = {Value::from_int(1, f->mode())};
    node.searcher = std::make_unique<SearcherStrategy>();
    node.searcher->kind = SearcherStrategy::Kind::kLeafOrder;
    node.searcher->subset = bit(to_orig[0]);
    node.searcher->order = {to_orig[0]};
    return node;
  }

  auto subset_map = [&](Mask local) {
    std::vector<int> map;
    for (int i : mask_elements(local)) map.push_back(to_orig[i]);
    return map;
  };

  if (auto initial = find_f_initial(*f)) {
    // Search the initial set up front; the Hider avoids it entirely.
    Mask rest_local = full & ~*initial;
    auto child = solve_game_node(contract(f, *initial), subset_map(rest_local));
    if (!child) return std::nullopt;

    GameNode node;
    node.value = f->eval(*initial) + child->value;
    node.x_local.assign(static_cast<size_t>(n), Value::zero(f->mode()));
    std::vector<int> rest_elements = mask_elements(rest_local);
    for (size_t i = 0; i < rest_elements.size(); ++i)
      node.x_local[rest_elements[i]] = child->x_local[i];
    node.phi = Value::zero(f->mode());
    for (int s = 0; s < n; ++s) node.phi += node.x_local[s] * f->eval(bit(s));

    node.searcher = std::make_unique<SearcherStrategy>();
    node.searcher->kind = SearcherStrategy::Kind::kSeries;
    node.searcher->subset = orig_mask_of(to_orig, full);
    for (int i : mask_elements(*initial))
      node.searcher->prefix.push_back(to_orig[i]);
    node.searcher->rest = std::move(child->searcher);
    return node;
  }

  if (auto separator = find_separator(*f)) {
    Mask a = *separator;
    Mask b = full & ~a;
    auto left = solve_game_node(restrict_to(f, a), subset_map(a));
    if (!left) return std::nullopt;
    auto right = solve_game_node(restrict_to(f, b), subset_map(b));
    if (!right) return std::nullopt;

    Value fa = f->eval(a);
    Value fb = f->eval(b);
    Value ftotal = f->eval(full);

    GameNode node;
    node.x_local.assign(static_cast<size_t>(n), Value::zero(f->mode()));
    std::vector<int> a_elements = mask_elements(a);
    std::vector<int> b_elements = mask_elements(b);
    for (size_t i = 0; i < a_elements.size(); ++i)
      node.x_local[a_elements[i]] = fa / ftotal * left->x_local[i];
    for (size_t i = 0; i < b_elements.size(); ++i)
      node.x_local[b_elements[i]] = fb / ftotal * right->x_local[i];
    node.phi = fa / ftotal * left->phi + fb / ftotal * right->phi;
    node.value = (ftotal + node.phi) / 2;

    node.searcher = std::make_unique<SearcherStrategy>();
    node.searcher->kind = SearcherStrategy::Kind::kParallel;
    node.searcher->subset = orig_mask_of(to_orig, full);
    node.searcher->q =
        Value::from_int(1, f->mode()) / 2 + (left->phi - right->phi) / (2 * ftotal);
    node.searcher->first_side = std::move(left->searcher);
    node.searcher->second_side = std::move(right->searcher);
    return node;
  }

  return std::nullopt;
}

}  // namespace

std::optional<GameSolution> game_value_spd(const SetFunction& f) {
  // The recursion only reads through shared_ptr copies of derived oracles;
  // wrap the root in a non-owning pointer.
  SetFunctionPtr root(&f, [](const SetFunction*) {});
  std::vector<int> ids(static_cast<size_t>(f.n()));
  std::iota(ids.begin(), ids.end(), 0);
  auto node = solve_game_node(root, ids);
  if (!node) return std::nullopt;
  GameSolution solution;
  solution.value = std::move(node->value);
  solution.phi = std::move(node->phi);
  solution.hider.x = std::move(node->x_local);
  solution.searcher = std::move(node->searcher);
  return solution;
}

namespace {

constexpr int kSamplerCap = 12;

// Exact expected prefix cost of each element for the "first by x, then
// uniformly at random" strategy: condition on the first element e, then on
// the set of other elements preceding s, which is a uniformly random k-set.
std::vector<Value> first_then_uniform_costs(
    const SetFunction& f,
    const std::vector<std::pair<int, Value>>& first_prob_local) {
  const int m = f.n();
  if (m > kSamplerCap)
    throw CapacityError("sampler evaluation limited to 12 elements per node");
  const Mask full = full_mask(m);
  std::vector<Value> x(static_cast<size_t>(m), Value::zero(f.mode()));
  for (const auto& [local, prob] : first_prob_local) x[local] = prob;

  std::vector<Value> out(static_cast<size_t>(m), Value::zero(f.mode()));
  if (m == 1) {
    out[0] = f.eval(full);
    return out;
  }
  for (int s = 0; s < m; ++s) {
    Value total = x[s] * f.eval(bit(s));
    for (int e = 0; e < m; ++e) {
      if (e == s || x[e].is_zero()) continue;
      // Average f({e, s} u R) over uniform positions of s among the rest.
      Mask others = full & ~bit(e) & ~bit(s);
      int k = m - 2;
      std::vector<Value> by_size(static_cast<size_t>(k + 1),
                                 Value::zero(f.mode()));
      Mask r = others;
      while (true) {
        by_size[mask_size(r)] += f.eval(bit(e) | bit(s) | r);
        if (r == 0) break;
        r = (r - 1) & others;
      }
      Value expectation = Value::zero(f.mode());
      Value binom = Value::from_int(1, f.mode());  // C(k, size)
      for (int size = 0; size <= k; ++size) {
        expectation += by_size[size] / binom;
        binom = binom * (k - size) / (size + 1);
      }
      total += x[e] * expectation / (m - 1);
    }
    out[s] = total;
  }
  return out;
}

std::vector<Value> cost_vector_node(const SetFunctionPtr& f,
                                    const SearcherStrategy& node,
                                    const std::vector<int>& to_orig) {
  const int n = f->n();
  const Mask full = full_mask(n);
  auto local_of = [&](int orig) {
    auto it = std::lower_bound(to_orig.begin(), to_orig.end(), orig);
    if (it == to_orig.end() || *it != orig)
      throw std::invalid_argument("sampler references an element outside its node");
    return static_cast<int>(it - to_orig.begin());
  };
  auto subset_map = [&](Mask local) {
    std::vector<int> map;
    for (int i : mask_elements(local)) map.push_back(to_orig[i]);
    return map;
  };
  std::vector<Value> out(static_cast<size_t>(n), Value::zero(f->mode()));

  switch (node.kind) {
    case SearcherStrategy::Kind::kLeafOrder: {
      if (static_cast<int>(node.order.size()) != n)
        throw std::invalid_argument("leaf order does not cover its node");
      Mask prefix = 0;
      for (int orig : node.order) {
        int s = local_of(orig);
        prefix |= bit(s);
        out[s] = f->eval(prefix);
      }
      return out;
    }
    case SearcherStrategy::Kind::kSeries: {
      Mask prefix = 0;
      for (int orig : node.prefix) {
        int s = local_of(orig);
        prefix |= bit(s);
        out[s] = f->eval(prefix);
      }
      if (!node.rest) throw std::invalid_argument("series node without a tail");
      Mask rest_local = full & ~prefix;
      Value head_cost = f->eval(prefix);
      std::vector<Value> tail = cost_vector_node(
          contract(f, prefix), *node.rest, subset_map(rest_local));
      std::vector<int> rest_elements = mask_elements(rest_local);
      for (size_t i = 0; i < rest_elements.size(); ++i)
        out[rest_elements[i]] = head_cost + tail[i];
      return out;
    }
    case SearcherStrategy::Kind::kParallel: {
      if (!node.first_side || !node.second_side)
        throw std::invalid_argument("parallel node without two sides");
      Mask a = 0, b = 0;
      for (int orig : mask_elements(node.first_side->subset))
        a |= bit(local_of(orig));
      for (int orig : mask_elements(node.second_side->subset))
        b |= bit(local_of(orig));
      if ((a | b) != full || (a & b) != 0)
        throw std::invalid_argument("parallel sides must partition the node");
      const Value& q = node.q;
      if (q.sign() < 0 || q > Value::from_int(1, f->mode()))
        throw std::invalid_argument("parallel mix probability outside [0, 1]");
      Value one = Value::from_int(1, f->mode());
      std::vector<Value> left =
          cost_vector_node(restrict_to(f, a), *node.first_side, subset_map(a));
      std::vector<Value> right = cost_vector_node(restrict_to(f, b),
                                                  *node.second_side,
                                                  subset_map(b));
      std::vector<int> a_elements = mask_elements(a);
      std::vector<int> b_elements = mask_elements(b);
      for (size_t i = 0; i < a_elements.size(); ++i)
        out[a_elements[i]] = left[i] + (one - q) * f->eval(b);
      for (size_t i = 0; i < b_elements.size(); ++i)
        out[b_elements[i]] = right[i] + q * f->eval(a);
      return out;
    }
    case SearcherStrategy::Kind::kFirstThenUniform: {
      std::vector<std::pair<int, Value>> local_probs;
      for (const auto& [orig, prob] : node.first_prob)
        local_probs.push_back({local_of(orig), prob});
      return first_then_uniform_costs(*f, local_probs);
    }
  }
  throw std::logic_error("unknown sampler node kind");
}

}  // namespace

std::vector<Value> expected_cost_vector(const SetFunction& f,
                                        const SearcherStrategy& strategy) {
  SetFunctionPtr root(&f, [](const SetFunction*) {});
  std::vector<int> ids(static_cast<size_t>(f.n()));
  std::iota(ids.begin(), ids.end(), 0);
  if (strategy.subset != full_mask(f.n()))
    throw std::invalid_argument("sampler must cover the whole ground set");
  return cost_vector_node(root, strategy, ids);
}

std::pair<int, Value> best_response_hider(const SetFunction& f,
                                          const SearcherStrategy& strategy) {
  std::vector<Value> costs = expected_cost_vector(f, strategy);
  int arg = 0;
  for (int s = 1; s < static_cast<int>(costs.size()); ++s)
    if (costs[s] > costs[arg]) arg = s;
  return {arg, costs[arg]};
}

std::pair<SearchOrder, Value> best_response_searcher(const SetFunction& f,
                                                     const HiderStrategy& x) {
  require_distribution_shape(f, x);
  SetFunctionPtr root(&f, [](const SetFunction*) {});
  SearchInstance instance(root, modular_from(f, x));
  return brute_force_optimal(instance);
}

}  // namespace subsearch
