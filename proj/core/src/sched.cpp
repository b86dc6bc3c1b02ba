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

#include "subsearch/sched.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "subsearch/errors.hpp"
#include "subsearch/spd.hpp"

namespace subsearch {

HSpec HSpec::power(double beta) {
  HSpec h;
  h.kind = Kind::kPower;
  h.param = beta;
  h.validate();
  return h;
}

HSpec HSpec::log(double a) {
  HSpec h;
  h.kind = Kind::kLog;
  h.param = a;
  h.validate();
  return h;
}

HSpec HSpec::exp_discount(double r) {
  HSpec h;
  h.kind = Kind::kExpDiscount;
  h.param = r;
  h.validate();
  return h;
}

HSpec HSpec::piecewise(std::vector<std::pair<Value, Value>> samples) {
  HSpec h;
  h.kind = Kind::kTable;
  h.table = std::move(samples);
  h.validate();
  return h;
}

void HSpec::validate() const {
  switch (kind) {
    case Kind::kIdentity:
      return;
    case Kind::kPower:
      if (!(param > 0.0 && param <= 1.0))
        throw std::invalid_argument("power exponent must lie in (0, 1]");
      return;
    case Kind::kLog:
    case Kind::kExpDiscount:
      if (!(param > 0.0))
        throw std::invalid_argument("h parameter must be positive");
      return;
    case Kind::kTable:
      break;
  }
  if (table.size() < 2)
    throw std::invalid_argument("table h needs at least two sample points");
  if (!table.front().first.is_zero() || !table.front().second.is_zero())
    throw std::invalid_argument("table h must start at (0, 0)");
  // Nondecreasing values, strictly increasing grid, concave slopes.
  std::optional<Value> prev_slope;
  for (size_t i = 1; i < table.size(); ++i) {
    Value dy = table[i].first - table[i - 1].first;
    Value dh = table[i].second - table[i - 1].second;
    if (dy.sign() <= 0)
      throw std::invalid_argument("table h grid must strictly increase");
    if (dh.sign() < 0)
      throw std::invalid_argument("table h must be nondecreasing");
    Value slope = dh / dy;
    if (prev_slope && slope > *prev_slope)
      throw std::invalid_argument("table h must be concave");
    prev_slope = slope;
  }
}

Value HSpec::apply(const Value& y) const {
  switch (kind) {
    case Kind::kIdentity:
      return y;
    case Kind::kPower:
      return Value::real(std::pow(y.to_double(), param));
    case Kind::kLog:
      return Value::real(std::log1p(param * y.to_double()));
    case Kind::kExpDiscount:
      return Value::real(-std::expm1(-param * y.to_double()) / param);
    case Kind::kTable:
      break;
  }
  if (y < table.front().first || y > table.back().first)
    throw std::domain_error("table h evaluated outside its grid");
  for (size_t i = 1; i < table.size(); ++i) {
    if (y <= table[i].first) {
      const auto& [y0, h0] = table[i - 1];
      const auto& [y1, h1] = table[i];
      return h0 + (h1 - h0) * (y - y0) / (y1 - y0);
    }
  }
  return table.back().second;
}

namespace {

// Strict-ancestor masks from precedence edges; throws on cycles.
std::vector<Mask> ancestor_masks(int n,
                                 const std::vector<std::pair<int, int>>& edges) {
  std::vector<Mask> preds(static_cast<size_t>(n), 0);
  std::vector<int> indegree(static_cast<size_t>(n), 0);
  std::vector<std::vector<int>> out(static_cast<size_t>(n));
  for (auto [s, t] : edges) {
    if (s < 0 || s >= n || t < 0 || t >= n || s == t)
      throw std::invalid_argument("precedence edge out of range");
    preds[t] |= bit(s);
    out[s].push_back(t);
    ++indegree[t];
  }
  std::vector<int> queue;
  for (int i = 0; i < n; ++i)
    if (indegree[i] == 0) queue.push_back(i);
  std::vector<Mask> anc(static_cast<size_t>(n), 0);
  size_t head = 0;
  while (head < queue.size()) {
    int u = queue[head++];
    for (int s : mask_elements(preds[u])) anc[u] |= anc[s] | bit(s);
    for (int v : out[u])
      if (--indegree[v] == 0) queue.push_back(v);
  }
  if (queue.size() != static_cast<size_t>(n))
    throw std::invalid_argument("precedence graph is cyclic");
  return anc;
}

class ClosureCostFunction final : public SetFunction {
 public:
  ClosureCostFunction(GroundSet ground, NumericMode mode,
                      std::vector<Mask> ancestors, std::vector<Value> p,
                      HSpec h, bool modular_shape)
      : SetFunction(std::move(ground), mode,
                    StructureFlags{.normalized = true,
                                   .nondecreasing = true,
                                   .submodular = true,
                                   .supermodular = modular_shape,
                                   .modular = modular_shape}),
        ancestors_(std::move(ancestors)),
        p_(std::move(p)),
        h_(std::move(h)) {}

  Mask closure_of(Mask a) const {
    Mask c = a;
    for (int j : mask_elements(a)) c |= ancestors_[j];
    return c;
  }

 protected:
  Value do_eval(Mask a) const override {
    Value load = Value::zero(mode());
    for (int j : mask_elements(closure_of(a))) load += p_[j];
    return h_.apply(load);
  }

 private:
  std::vector<Mask> ancestors_;
  std::vector<Value> p_;
  HSpec h_;
};

class SubsetWeightFunction final : public SetFunction {
 public:
  SubsetWeightFunction(GroundSet ground, NumericMode mode,
                       std::vector<std::pair<Mask, Value>> entries)
      : SetFunction(std::move(ground), mode, flags_of(entries)),
        entries_(std::move(entries)) {}

 protected:
  Value do_eval(Mask a) const override {
    Value sum = Value::zero(mode());
    for (const auto& [set, w] : entries_)
      if ((set & ~a) == 0) sum += w;
    return sum;
  }

 private:
  static StructureFlags flags_of(
      const std::vector<std::pair<Mask, Value>>& entries) {
    bool singletons_only = true;
    for (const auto& [set, w] : entries) {
      if (w.sign() < 0)
        throw std::invalid_argument("subset weights must be nonnegative");
      if (set == 0)
        throw std::invalid_argument("subset weight on the empty set");
      if (mask_size(set) > 1) singletons_only = false;
    }
    return StructureFlags{.normalized = true,
                          .nondecreasing = true,
                          .submodular = singletons_only,
                          .supermodular = true,
                          .modular = singletons_only};
  }

  std::vector<std::pair<Mask, Value>> entries_;
};

void check_instance_shape(const PrecedenceInstance& instance) {
  const int n = instance.n();
  if (n < 1 || n > kMaxGroundSize)
    throw std::invalid_argument("job count out of range");
  if (static_cast<int>(instance.p.size()) != n)
    throw std::invalid_argument("need one processing time per job");
  if (instance.h.requires_float() && instance.mode != NumericMode::kFloat)
    throw std::logic_error("this h kind requires float mode");
  // Zero processing times are allowed here so that dummy-job reductions of
  // subset weights stay expressible; instance validation enforces positive
  // subset costs for the solver paths.
  for (const Value& t : instance.p) {
    if (t.mode() != instance.mode)
      throw std::logic_error("processing time mode mismatch");
    if (t.sign() < 0)
      throw std::invalid_argument("processing times must be nonnegative");
  }
  for (const auto& [y, hy] : instance.h.table)
    if (y.mode() != instance.mode || hy.mode() != instance.mode)
      throw std::logic_error("table h mode mismatch");
}

}  // namespace

SetFunctionPtr cost_oracle(const PrecedenceInstance& instance) {
  check_instance_shape(instance);
  instance.h.validate();
  std::vector<Mask> anc = ancestor_masks(instance.n(), instance.edges);
  bool modular_shape =
      instance.edges.empty() && instance.h.kind == HSpec::Kind::kIdentity;
  return std::make_shared<ClosureCostFunction>(
      GroundSet(instance.jobs), instance.mode, std::move(anc), instance.p,
      instance.h, modular_shape);
}

SetFunctionPtr weight_oracle(const PrecedenceInstance& instance) {
  const int n = instance.n();
  GroundSet ground(instance.jobs);
  if (!instance.weights.empty()) {
    if (!instance.subset_weights.empty())
      throw std::invalid_argument("choose per-job or subset weights, not both");
    if (static_cast<int>(instance.weights.size()) != n)
      throw std::invalid_argument("need one weight per job");
    bool any_positive = false;
    for (const Value& w : instance.weights) {
      if (w.sign() < 0)
        throw std::invalid_argument("weights must be nonnegative");
      if (w.sign() > 0) any_positive = true;
    }
    if (!any_positive)
      throw std::invalid_argument("at least one weight must be positive");
    return make_modular(std::move(ground), instance.mode, instance.weights);
  }
  if (instance.subset_weights.empty())
    throw std::invalid_argument("instance carries no weights");
  bool any_positive = false;
  for (const auto& [set, w] : instance.subset_weights) {
    if (!ground.valid(set))
      throw std::invalid_argument("subset weight mask out of range");
    if (w.sign() > 0) any_positive = true;
  }
  if (!any_positive)
    throw std::invalid_argument("at least one weight must be positive");
  return std::make_shared<SubsetWeightFunction>(std::move(ground),
                                                instance.mode,
                                                instance.subset_weights);
}

SetFunctionPtr tree_cost_oracle(const RootedTree& tree) {
  if (tree.edges.empty())
    throw std::invalid_argument("tree has no searchable vertices");
  std::set<int> vertex_set{tree.root};
  NumericMode cost_mode = std::get<2>(tree.edges.front()).mode();
  for (const auto& [u, v, cost] : tree.edges) {
    vertex_set.insert(u);
    vertex_set.insert(v);
    if (cost.mode() != cost_mode)
      throw std::logic_error("tree edge cost mode mismatch");
    if (cost.sign() <= 0)
      throw std::invalid_argument("tree edge costs must be positive");
  }
  if (tree.edges.size() + 1 != vertex_set.size())
    throw std::invalid_argument("edge set does not form a tree");

  // Orient edges away from the root by BFS; disconnected input is rejected.
  std::map<int, std::vector<std::pair<int, Value>>> adjacency;
  for (const auto& [u, v, cost] : tree.edges) {
    adjacency[u].push_back({v, cost});
    adjacency[v].push_back({u, cost});
  }
  std::map<int, int> parent;
  std::map<int, Value> edge_cost;
  std::vector<int> frontier{tree.root};
  std::set<int> seen{tree.root};
  while (!frontier.empty()) {
    int u = frontier.back();
    frontier.pop_back();
    for (const auto& [v, cost] : adjacency[u]) {
      if (seen.count(v)) continue;
      seen.insert(v);
      parent[v] = u;
      edge_cost[v] = cost;
      frontier.push_back(v);
    }
  }
  if (seen.size() != vertex_set.size())
    throw std::invalid_argument("tree is disconnected from the root");

  // Elements are the non-root vertices in ascending id order.
  std::vector<int> elements;
  for (int v : vertex_set)
    if (v != tree.root) elements.push_back(v);
  std::map<int, int> index_of;
  std::vector<std::string> labels;
  for (size_t i = 0; i < elements.size(); ++i) {
    index_of[elements[i]] = static_cast<int>(i);
    labels.push_back(std::to_string(elements[i]));
  }

  NumericMode mode = cost_mode;
  std::vector<Mask> anc(elements.size(), 0);
  std::vector<Value> p(elements.size(), Value::zero(mode));
  for (size_t i = 0; i < elements.size(); ++i) {
    p[i] = edge_cost.at(elements[i]);
    for (int v = parent.at(elements[i]); v != tree.root; v = parent.at(v))
      anc[i] |= bit(index_of.at(v));
  }
  return std::make_shared<ClosureCostFunction>(GroundSet(std::move(labels)),
                                               mode, std::move(anc),
                                               std::move(p), HSpec::identity(),
                                               /*modular_shape=*/false);
}

namespace {

class ConcaveComposition final : public MemoizedFunction {
 public:
  ConcaveComposition(HSpec h, SetFunctionPtr inner)
      : MemoizedFunction(inner->ground(),
                         h.requires_float() ? NumericMode::kFloat
                                            : inner->mode(),
                         composed_flags(*inner)),
        h_(std::move(h)),
        inner_(std::move(inner)) {}

 private:
  static StructureFlags composed_flags(const SetFunction& inner) {
    const StructureFlags& d = inner.declared();
    return StructureFlags{.normalized = d.normalized,
                          .nondecreasing = d.nondecreasing,
                          .submodular = d.submodular && d.nondecreasing,
                          .supermodular = false,
                          .modular = false};
  }

  Value compute(Mask a) const override { return h_.apply(inner_->eval(a)); }

  HSpec h_;
  SetFunctionPtr inner_;
};

}  // namespace

SetFunctionPtr compose_concave(HSpec h, SetFunctionPtr inner) {
  h.validate();
  if (h.kind == HSpec::Kind::kIdentity) return inner;
  if (h.requires_float() && inner->mode() != NumericMode::kFloat)
    throw std::logic_error("this h kind requires a float-mode inner oracle");
  return std::make_shared<ConcaveComposition>(std::move(h), std::move(inner));
}

SearchOrder smith_rule(std::span<const Value> p, std::span<const Value> w) {
  const int n = static_cast<int>(p.size());
  if (w.size() != p.size())
    throw std::invalid_argument("need matching p and w vectors");
  for (const Value& t : p)
    if (t.sign() <= 0)
      throw std::invalid_argument("processing times must be positive");
  SearchOrder order = SearchOrder::identity(n);
  std::stable_sort(order.perm.begin(), order.perm.end(), [&](int a, int b) {
    // w_a / p_a > w_b / p_b by cross multiplication.
    return w[a] * p[b] > w[b] * p[a];
  });
  return order;
}

SearchOrder precedence_repair(const PrecedenceInstance& instance,
                              const SearchOrder& order) {
  std::vector<Mask> anc = ancestor_masks(instance.n(), instance.edges);
  Mask emitted = 0;
  SearchOrder out;
  for (int j : order.perm) {
    Mask pending = (anc[j] | bit(j)) & ~emitted;
    while (pending) {
      // Lowest-index pending job whose own ancestors are all emitted.
      int chosen = -1;
      for (int t : mask_elements(pending)) {
        if ((anc[t] & ~emitted) == 0) {
          chosen = t;
          break;
        }
      }
      out.perm.push_back(chosen);
      emitted |= bit(chosen);
      pending &= ~bit(chosen);
    }
  }
  return out;
}

CostReport schedule(const PrecedenceInstance& instance, SolveMethod method) {
  SearchInstance search(cost_oracle(instance), weight_oracle(instance));

  if (method == SolveMethod::kSidney) {
    CostReport report = two_approx_search(search);
    report.order = precedence_repair(instance, report.order);
    report.cost = expected_cost(search, report.order);
    return report;
  }

  SearchOrder order;
  Value cost;
  if (method == SolveMethod::kSpd) {
    auto solved = spd_optimal_search(search);
    if (!solved)
      throw NotDecomposableError(
          "instance is not series-parallel decomposable");
    order = std::move(solved->first);
  } else {
    order = brute_force_optimal(search).first;
  }
  // Repairing an optimal order of a closure-invariant cost keeps it optimal.
  order = precedence_repair(instance, order);
  cost = expected_cost(search, order);
  CostReport report;
  report.order = std::move(order);
  report.cost = cost;
  report.lower_bound = cost;
  report.ratio_bound = Value::from_int(1, instance.mode);
  return report;
}

Dag gsp_compose(GspKind kind, const Dag& a, const Dag& b) {
  std::set<int> overlap(a.vertices.begin(), a.vertices.end());
  for (int v : b.vertices)
    if (overlap.count(v))
      throw std::invalid_argument("composition needs disjoint vertex sets");
  Dag out;
  out.vertices = a.vertices;
  out.vertices.insert(out.vertices.end(), b.vertices.begin(),
                      b.vertices.end());
  out.edges = a.edges;
  out.edges.insert(out.edges.end(), b.edges.begin(), b.edges.end());
  if (kind == GspKind::kSeries)
    for (int u : a.vertices)
      for (int v : b.vertices) out.edges.push_back({u, v});
  return out;
}

namespace {

// First and last slopes of h on [0, total]; closed forms per kind. Power
// with exponent below 1 is handled by the caller (its slope at 0 diverges).
std::pair<Value, Value> boundary_slopes(const HSpec& h, const Value& total) {
  switch (h.kind) {
    case HSpec::Kind::kIdentity:
      return {Value::from_int(1, total.mode()),
              Value::from_int(1, total.mode())};
    case HSpec::Kind::kPower:
      return {Value::real(1.0), Value::real(1.0)};  // beta == 1 only
    case HSpec::Kind::kLog:
      return {Value::real(h.param),
              Value::real(h.param / (1.0 + h.param * total.to_double()))};
    case HSpec::Kind::kExpDiscount:
      return {Value::real(1.0),
              Value::real(std::exp(-h.param * total.to_double()))};
    case HSpec::Kind::kTable:
      break;
  }
  if (total > h.table.back().first)
    throw std::domain_error("total load outside the table grid");
  auto slope = [&](size_t i) {
    return (h.table[i].second - h.table[i - 1].second) /
           (h.table[i].first - h.table[i - 1].first);
  };
  size_t last = 1;
  while (last < h.table.size() - 1 && h.table[last].first < total) ++last;
  return {slope(1), slope(last)};
}

}  // namespace

Value noprec_ratio(const HSpec& h, const Value& total) {
  h.validate();
  if (total.sign() <= 0)
    throw std::invalid_argument("total processing time must be positive");
  if (h.kind == HSpec::Kind::kPower && h.param < 1.0) {
    // h'(0) diverges, so 1 - kappa = 0 and the bound degrades to 2.
    return Value::real(2.0);
  }
  auto [at_zero, at_total] = boundary_slopes(h, total);
  if (at_zero.is_zero()) throw std::domain_error("h'(0) = 0");

  Value one_minus_kappa = at_total / at_zero;

  if (h.kind == HSpec::Kind::kTable) {
    // Cross-check the derivative form against the one-sided limit form
    // (h(T) - h(y)) / h(T - y), evaluated inside the boundary segments.
    Value gap = subsearch::min(h.table[1].first, total) / 2;
    Value y = total - gap;
    if (y.sign() > 0) {
      Value limit_form = (h.apply(total) - h.apply(y)) / h.apply(gap);
      if (!limit_form.approx_eq(one_minus_kappa, 1e-6))
        throw std::domain_error(
            "derivative and limit forms of 1 - kappa disagree");
    }
  }

  Value two = Value::from_int(2, one_minus_kappa.mode());
  Value one = Value::from_int(1, one_minus_kappa.mode());
  return two / (one + one_minus_kappa);
}

}  // namespace subsearch
