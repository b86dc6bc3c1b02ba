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

#include "subsearch/spd.hpp"

#include <numeric>

#include "subsearch/density.hpp"
#include "subsearch/errors.hpp"
#include "subsearch/sidney.hpp"

namespace subsearch {

Mask closure(const SetFunction& f, Mask a) {
  Value base = f.eval(a);
  Mask out = a;
  for (int s = 0; s < f.n(); ++s) {
    if (mask_contains(a, s)) continue;
    if (f.eval(a | bit(s)) == base) out |= bit(s);
  }
  return out;
}

std::optional<Mask> find_f_initial(const SetFunction& f) {
  const int n = f.n();
  const Mask full = full_mask(n);
  std::vector<Mask> singleton_closure(static_cast<size_t>(n));
  for (int s = 0; s < n; ++s) singleton_closure[s] = closure(f, bit(s));

  for (int s = 0; s < n; ++s) {
    // Largest f-initial set avoiding s: start from cl(s) - s and intersect
    // with the closure of every singleton that falls outside the candidate.
    Mask candidate = mask_without(singleton_closure[s], s);
    Mask examined = bit(s);
    while (candidate) {
      Mask outside_unexamined = full & ~candidate & ~examined;
      if (!outside_unexamined) break;
      int t = std::countr_zero(outside_unexamined);
      candidate &= singleton_closure[t];
      examined |= bit(t);
    }
    if (candidate) return candidate;
  }
  return std::nullopt;
}

namespace {

constexpr int kSeparatorCap = 20;

std::optional<Mask> find_zero_connectivity(const SetFunction& f,
                                           const SetFunction* g, double tol) {
  const int n = f.n();
  if (n > kSeparatorCap)
    throw CapacityError("separator enumeration is limited to n <= 20");
  if (n == 1) return std::nullopt;
  const Mask full = full_mask(n);
  const Value f_total = f.eval(full);
  const Value g_total = g ? g->eval(full) : Value::zero(f.mode());
  const Value zero = Value::zero(f.mode());

  std::optional<Mask> best;
  for (Mask b = 1; b < full; ++b) {
    Mask comp = full & ~b;
    // d_f(B) >= 0 and g(S)-g(B)-g(comp) >= 0; their sum vanishes exactly
    // when B separates both functions.
    Value d = f.eval(b) + f.eval(comp) - f_total;
    if (g) d += g_total - g->eval(b) - g->eval(comp);
    bool is_zero = f.mode() == NumericMode::kRational
                       ? d.is_zero()
                       : std::abs(d.to_double()) <= tol;
    if (!is_zero) continue;
    if (!best || mask_size(b) < mask_size(*best) ||
        (mask_size(b) == mask_size(*best) && b < *best))
      best = b;
  }
  return best;
}

struct LocalInstance {
  SetFunctionPtr f, g;
  std::vector<int> to_orig;

  int n() const { return f->n(); }
  Mask orig_mask(Mask local) const {
    Mask out = 0;
    for (int i : mask_elements(local)) out |= bit(to_orig[i]);
    return out;
  }
  LocalInstance restricted(Mask keep) const {
    std::vector<int> map;
    for (int i : mask_elements(keep)) map.push_back(to_orig[i]);
    return LocalInstance{restrict_to(f, keep), restrict_to(g, keep),
                         std::move(map)};
  }
  LocalInstance contracted(Mask by) const {
    Mask rest = full_mask(n()) & ~by;
    std::vector<int> map;
    for (int i : mask_elements(rest)) map.push_back(to_orig[i]);
    return LocalInstance{contract(f, by), contract(g, by), std::move(map)};
  }
};

LocalInstance top_level(const SearchInstance& instance) {
  std::vector<int> ids(static_cast<size_t>(instance.n()));
  std::iota(ids.begin(), ids.end(), 0);
  return LocalInstance{instance.f_ptr(), instance.g_ptr(), std::move(ids)};
}

// Fixed split policy: series before parallel, f-initial before g#-initial,
// singleton scan in ascending index. Returns the initial segment I.
std::optional<std::pair<Mask, SeriesOrigin>> series_split(
    const LocalInstance& node) {
  if (auto i = find_f_initial(*node.f))
    return std::make_pair(*i, SeriesOrigin::kFInitial);
  if (auto j = find_f_initial(*dual(node.g)))
    return std::make_pair(full_mask(node.n()) & ~*j,
                          SeriesOrigin::kGSharpInitial);
  return std::nullopt;
}

std::unique_ptr<SPDTree> decompose_node(const LocalInstance& node,
                                        double tol) {
  auto tree = std::make_unique<SPDTree>();
  tree->subset = node.orig_mask(full_mask(node.n()));
  tree->f = node.f;
  tree->g = node.g;

  if (node.n() == 1) {
    tree->kind = SPDTree::Kind::kLeaf;
    tree->element = node.to_orig[0];
    return tree;
  }
  if (auto series = series_split(node)) {
    auto [initial, origin] = *series;
    tree->kind = SPDTree::Kind::kSeries;
    tree->origin = origin;
    tree->first = decompose_node(node.restricted(initial), tol);
    tree->second = decompose_node(node.contracted(initial), tol);
    if (!tree->first || !tree->second) return nullptr;
    return tree;
  }
  if (auto separator = find_zero_connectivity(*node.f, node.g.get(), tol)) {
    tree->kind = SPDTree::Kind::kParallel;
    tree->first = decompose_node(node.restricted(*separator), tol);
    tree->second =
        decompose_node(node.restricted(full_mask(node.n()) & ~*separator), tol);
    if (!tree->first || !tree->second) return nullptr;
    return tree;
  }
  return nullptr;
}

std::optional<std::vector<int>> solve_node(const LocalInstance& node,
                                           double tol) {
  if (node.n() == 1) return std::vector<int>{node.to_orig[0]};

  Mask initial = 0;
  if (auto series = series_split(node)) {
    initial = series->first;
  } else if (auto separator =
                 find_zero_connectivity(*node.f, node.g.get(), tol)) {
    // A maximum-density subset living in one side of the separator exists;
    // it may be searched first, and the rest is solved in the contraction.
    Mask dense = max_density_subset(SearchInstance(node.f, node.g)).set;
    initial = dense & *separator;
    if (!initial) initial = dense & ~*separator & full_mask(node.n());
  } else {
    return std::nullopt;
  }

  auto head = solve_node(node.restricted(initial), tol);
  if (!head) return std::nullopt;
  auto tail = solve_node(node.contracted(initial), tol);
  if (!tail) return std::nullopt;
  head->insert(head->end(), tail->begin(), tail->end());
  return head;
}

}  // namespace

std::optional<Mask> find_separator(const SetFunction& f, const SetFunction& g,
                                   double tol) {
  if (f.n() != g.n())
    throw std::invalid_argument("separator search needs a common ground set");
  return find_zero_connectivity(f, &g, tol);
}

std::optional<Mask> find_separator(const SetFunction& f, double tol) {
  return find_zero_connectivity(f, nullptr, tol);
}

std::unique_ptr<SPDTree> spd_decompose(const SearchInstance& instance) {
  return decompose_node(top_level(instance), 1e-9);
}

std::optional<std::pair<SearchOrder, Value>> spd_optimal_search(
    const SearchInstance& instance) {
  auto perm = solve_node(top_level(instance), 1e-9);
  if (!perm) return std::nullopt;
  SearchOrder order{std::move(*perm)};
  Value cost = expected_cost(instance, order);
  return std::make_pair(std::move(order), std::move(cost));
}

}  // namespace subsearch
