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

#include "subsearch/density.hpp"

#include "subsearch/errors.hpp"

namespace subsearch {

namespace {

constexpr int kEnumerationCap = 20;

void check_capacity(const SearchInstance& instance) {
  if (instance.n() > kEnumerationCap)
    throw CapacityError(
        "enumeration backend for density search is limited to n <= 20");
}

// Union of all maximizers of g - lambda * f over submasks of `within`.
// The maximizers of a supermodular function form a lattice, so the union is
// itself a maximizer.
Mask maximal_shifted_maximizer(const SearchInstance& instance,
                               const Value& lambda, Mask within) {
  Value best = Value::zero(instance.mode());  // empty set scores 0
  Mask arg_union = 0;
  Mask x = within;
  while (true) {
    Value v = instance.g_of(x) - lambda * instance.f_of(x);
    int cmp = v.compare(best);
    if (cmp > 0) {
      best = v;
      arg_union = x;
    } else if (cmp == 0) {
      arg_union |= x;
    }
    if (x == 0) break;
    x = (x - 1) & within;
  }
  return arg_union;
}

}  // namespace

Value density(const SearchInstance& instance, Mask a) {
  if (a == 0) throw std::invalid_argument("density of the empty set");
  Value cost = instance.f_of(a);
  if (cost.sign() <= 0)
    throw std::domain_error("density undefined: f is not positive on " +
                            instance.ground().subset_to_string(a));
  return instance.g_of(a) / cost;
}

Mask maximize_shifted(const SearchInstance& instance, const Value& lambda) {
  check_capacity(instance);
  if (lambda.sign() < 0)
    throw std::invalid_argument("shifted maximization needs lambda >= 0");
  return maximal_shifted_maximizer(instance, lambda, instance.ground().full());
}

DensityResult max_density_subset(const SearchInstance& instance) {
  check_capacity(instance);
  Mask candidate = instance.ground().full();
  for (int round = 0; round <= instance.n(); ++round) {
    Value lambda = density(instance, candidate);
    Mask arg = maximal_shifted_maximizer(instance, lambda, candidate);
    // arg == candidate exactly when the shifted maximum is zero, i.e. the
    // candidate itself already has maximum density among its subsets.
    if (arg == candidate) return DensityResult{candidate, lambda, true};
    candidate = arg;
  }
  throw std::logic_error("density iteration failed to shrink");
}

}  // namespace subsearch
