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

#ifndef SUBSEARCH_DENSITY_HPP_
#define SUBSEARCH_DENSITY_HPP_

#include "subsearch/instance.hpp"

namespace subsearch {

/// Search density g(A) / f(A) of a nonempty subset.
Value density(const SearchInstance& instance, Mask a);

/// The unique maximal maximizer of g - lambda * f over all subsets, obtained
/// as the union of all maximizers (they form a lattice). Enumeration backend,
/// capped at n <= 20; the signature is the extension point for polynomial
/// submodular-minimization backends.
Mask maximize_shifted(const SearchInstance& instance, const Value& lambda);

struct DensityResult {
  Mask set = 0;     // nonempty
  Value rho;        // g(set) / f(set)
  bool maximal = false;  // set is the unique maximal maximum-density subset
};

/// The largest subset of maximum density, found by iterating
/// lambda <- rho(candidate), candidate <- maximal maximizer of g - lambda f
/// over the shrinking candidate, until the density matches lambda. At most n
/// rounds; exact in rational mode.
DensityResult max_density_subset(const SearchInstance& instance);

}  // namespace subsearch

#endif  // SUBSEARCH_DENSITY_HPP_
