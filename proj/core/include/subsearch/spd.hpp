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

#ifndef SUBSEARCH_SPD_HPP_
#define SUBSEARCH_SPD_HPP_

#include <memory>
#include <optional>
#include <utility>

#include "subsearch/instance.hpp"

namespace subsearch {

/// f-closure of A: the unique maximal superset with the same f value. For a
/// monotone submodular f a single pass over outside singletons is exact.
Mask closure(const SetFunction& f, Mask a);

/// The first nonempty largest f-initial set I_s, scanning s in ascending
/// index. An f-initial set I is a proper subset contained in the closure of
/// every outside singleton; it may be searched first at no loss.
std::optional<Mask> find_f_initial(const SetFunction& f);

/// A proper nonempty B across which both f and g split as direct sums,
/// detected by a zero of the symmetric connectivity of f - g. Tie-break:
/// smallest cardinality, then smallest mask. Enumeration backend (n <= 20);
/// the signature is the extension point for a symmetric-submodular-
/// minimization backend. Float mode uses an absolute tolerance on the
/// connectivity value.
std::optional<Mask> find_separator(const SetFunction& f, const SetFunction& g,
                                   double tol = 1e-9);

/// Separator of f alone (zero of the connectivity of f).
std::optional<Mask> find_separator(const SetFunction& f, double tol = 1e-9);

enum class SeriesOrigin { kFInitial, kGSharpInitial };

/// Recursive series/parallel decomposition certificate. Children partition
/// the node subset; series nodes search `first` before `second`, parallel
/// nodes split across a separator.
struct SPDTree {
  enum class Kind { kLeaf, kSeries, kParallel };

  Kind kind = Kind::kLeaf;
  Mask subset = 0;   // original-index subset covered by this node
  int element = -1;  // leaf payload
  SeriesOrigin origin = SeriesOrigin::kFInitial;  // series nodes only
  std::unique_ptr<SPDTree> first;   // series: initial part; parallel: B side
  std::unique_ptr<SPDTree> second;  // series: remainder; parallel: complement
  SetFunctionPtr f, g;  // node-local (restricted/contracted) oracles
};

/// Full decomposition down to singletons, trying series (f-initial, then
/// g#-initial) before parallel at every node. Returns null when some node
/// admits neither split.
std::unique_ptr<SPDTree> spd_decompose(const SearchInstance& instance);

/// Exact optimal search for decomposable instances. Series nodes concatenate
/// the initial set's optimal search with the contracted remainder's; parallel
/// nodes extract a maximum-density subset lying inside one separator side and
/// recurse. Returns nullopt when the recursion meets a non-decomposable node.
std::optional<std::pair<SearchOrder, Value>> spd_optimal_search(
    const SearchInstance& instance);

}  // namespace subsearch

#endif  // SUBSEARCH_SPD_HPP_
