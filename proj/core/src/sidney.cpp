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

#include "subsearch/sidney.hpp"

#include <algorithm>
#include <numeric>

#include "subsearch/errors.hpp"

namespace subsearch {

namespace {

void require_permutation(const SearchInstance& instance,
                         const SearchOrder& order) {
  if (!order.is_permutation(instance.n()))
    throw std::invalid_argument("order is not a permutation of the ground set");
}

}  // namespace

Value expected_cost(const SearchInstance& instance, const SearchOrder& order) {
  require_permutation(instance, order);
  Value cost = Value::zero(instance.mode());
  Mask prefix = 0;
  for (int j : order.perm) {
    Mask prev = prefix;
    prefix |= bit(j);
    cost += (instance.g_of(prefix) - instance.g_of(prev)) *
            instance.f_of(prefix);
  }
  return cost;
}

Value epsilon(const SearchInstance& instance, const SearchOrder& order) {
  require_permutation(instance, order);
  Value sum = Value::zero(instance.mode());
  Mask prefix = 0;
  for (int j : order.perm) {
    Mask prev = prefix;
    prefix |= bit(j);
    sum += (instance.f_of(prefix) - instance.f_of(prev)) *
           (instance.g_of(prefix) - instance.g_of(prev));
  }
  return sum;
}

std::pair<SearchOrder, SearchOrder> epsilon_greedy_orders(
    const SearchInstance& instance) {
  const int n = instance.n();
  std::vector<Value> f_singles, gsharp_singles;
  SetFunctionPtr gsharp = dual(instance.g_ptr());
  for (int s = 0; s < n; ++s) {
    f_singles.push_back(instance.f_of(bit(s)));
    gsharp_singles.push_back(gsharp->eval(bit(s)));
  }
  auto sorted_by = [n](const std::vector<Value>& key) {
    SearchOrder o = SearchOrder::identity(n);
    std::stable_sort(o.perm.begin(), o.perm.end(),
                     [&](int a, int b) { return key[a] > key[b]; });
    return o;
  };
  return {sorted_by(f_singles), sorted_by(gsharp_singles)};
}

Decomposition sidney_decomposition(const SearchInstance& instance) {
  Decomposition result;
  SearchInstance current = instance;
  std::vector<int> to_orig(static_cast<size_t>(instance.n()));
  std::iota(to_orig.begin(), to_orig.end(), 0);

  while (true) {
    DensityResult dense = max_density_subset(current);
    Mask block = 0;
    for (int i : mask_elements(dense.set)) block |= bit(to_orig[i]);
    result.blocks.push_back(block);
    result.rhos.push_back(dense.rho);
    if (dense.set == current.ground().full()) break;

    Mask rest = current.ground().full() & ~dense.set;
    std::vector<int> next_map;
    for (int i : mask_elements(rest)) next_map.push_back(to_orig[i]);
    current = current.contracted(dense.set);
    to_orig = std::move(next_map);
  }
  return result;
}

CostReport two_approx_search(const SearchInstance& instance) {
  Decomposition decomposition = sidney_decomposition(instance);

  CostReport report;
  for (Mask block : decomposition.blocks)
    for (int j : mask_elements(block)) report.order.perm.push_back(j);
  report.cost = expected_cost(instance, report.order);

  // Certified lower bound: within each block the contracted sub-instance has
  // maximum density, so any of its searches costs at least half the product
  // of its g-mass and f-cost; the cross terms between a block and everything
  // after it are incurred exactly by every block-respecting order.
  const Value gfull = instance.g_of(instance.ground().full());
  Value lower = Value::zero(instance.mode());
  Mask prefix = 0;
  for (Mask block : decomposition.blocks) {
    Mask prev = prefix;
    prefix |= block;
    Value df = instance.f_of(prefix) - instance.f_of(prev);
    Value dg = instance.g_of(prefix) - instance.g_of(prev);
    lower += df * dg / 2 + (gfull - instance.g_of(prefix)) * df;
  }
  report.lower_bound = lower;
  report.ratio_bound = Value::from_int(2, instance.mode());
  return report;
}

std::pair<SearchOrder, Value> brute_force_optimal(
    const SearchInstance& instance) {
  const int n = instance.n();
  if (n > 16)
    throw CapacityError("subset dynamic program is limited to n <= 16");
  const Mask full = full_mask(n);

  // suffix[P] = optimal remaining cost once the prefix set P is searched.
  // The cost of searching s next depends only on P and s.
  std::vector<Value> suffix(size_t{1} << n, Value::zero(instance.mode()));
  auto step_cost = [&](Mask p, int s) {
    Mask next = p | bit(s);
    return (instance.g_of(next) - instance.g_of(p)) * instance.f_of(next) +
           suffix[next];
  };
  for (Mask p = full; p-- > 0;) {
    std::optional<Value> best;
    for (int s = 0; s < n; ++s) {
      if (mask_contains(p, s)) continue;
      Value step = step_cost(p, s);
      if (!best || step < *best) best = step;
    }
    suffix[p] = *best;
  }

  // Lexicographically smallest optimal order: at each prefix take the lowest
  // element whose step cost plus optimal completion matches the suffix value.
  // Recomputing step_cost repeats the exact expression from the pass above,
  // so the equality test is safe in float mode as well.
  SearchOrder order;
  Mask p = 0;
  while (p != full) {
    bool advanced = false;
    for (int s = 0; s < n && !advanced; ++s) {
      if (mask_contains(p, s)) continue;
      if (step_cost(p, s) == suffix[p]) {
        order.perm.push_back(s);
        p |= bit(s);
        advanced = true;
      }
    }
    if (!advanced)
      throw std::logic_error("dynamic program reconstruction stalled");
  }
  return {order, suffix[0]};
}

std::pair<Value, std::vector<SearchOrder>> enumerate_optimal_orders(
    const SearchInstance& instance) {
  const int n = instance.n();
  if (n > 9)
    throw CapacityError("permutation enumeration is limited to n <= 9");
  SearchOrder order = SearchOrder::identity(n);
  std::optional<Value> best;
  std::vector<SearchOrder> argmins;
  do {
    Value c = expected_cost(instance, order);
    if (!best || c < *best) {
      best = c;
      argmins.clear();
      argmins.push_back(order);
    } else if (c == *best) {
      argmins.push_back(order);
    }
  } while (std::next_permutation(order.perm.begin(), order.perm.end()));
  return {*best, std::move(argmins)};
}

CurvatureReport curvature_report(const SearchInstance& instance) {
  CurvatureReport report;
  report.kappa_f = curvature(instance.f());
  report.kappa_gsharp = curvature(*dual(instance.g_ptr()));
  Value one = Value::from_int(1, instance.mode());
  report.theta = (one - report.kappa_f) * (one - report.kappa_gsharp);
  return report;
}

Value curvature_ratio_bound(const SearchInstance& instance) {
  CurvatureReport c = curvature_report(instance);
  Value one = Value::from_int(1, instance.mode());
  Value two = Value::from_int(2, instance.mode());
  if (c.kappa_f >= one || c.kappa_gsharp >= one) return two;
  Value slack = max(one - c.kappa_f, one - c.kappa_gsharp);
  Value delta = min(c.theta, two * c.theta * slack / (one + c.theta));
  return two / (one + delta);
}

}  // namespace subsearch
