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

#ifndef SUBSEARCH_INSTANCE_HPP_
#define SUBSEARCH_INSTANCE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "subsearch/set_function.hpp"

namespace subsearch {

/// A search order: perm[t] is the element inspected at step t+1.
struct SearchOrder {
  std::vector<int> perm;

  static SearchOrder identity(int n) {
    SearchOrder o;
    o.perm.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) o.perm[i] = i;
    return o;
  }

  bool is_permutation(int n) const;
  SearchOrder reversed() const {
    SearchOrder o(*this);
    std::reverse(o.perm.begin(), o.perm.end());
    return o;
  }

  friend bool operator==(const SearchOrder& a, const SearchOrder& b) {
    return a.perm == b.perm;
  }
};

/// A cost oracle f and weight oracle g over a common ground set. Construction
/// checks only shape compatibility; validate_instance() checks the standing
/// structural assumptions.
class SearchInstance {
 public:
  SearchInstance(SetFunctionPtr f, SetFunctionPtr g);

  const GroundSet& ground() const { return f_->ground(); }
  int n() const { return f_->n(); }
  NumericMode mode() const { return f_->mode(); }

  const SetFunction& f() const { return *f_; }
  const SetFunction& g() const { return *g_; }
  const SetFunctionPtr& f_ptr() const { return f_; }
  const SetFunctionPtr& g_ptr() const { return g_; }

  Value f_of(Mask a) const { return f_->eval(a); }
  Value g_of(Mask a) const { return g_->eval(a); }

  /// Instance on the re-indexed subset `keep` with both oracles restricted.
  SearchInstance restricted(Mask keep) const;
  /// Instance on the re-indexed complement of `by` with both contracted.
  SearchInstance contracted(Mask by) const;

 private:
  SetFunctionPtr f_, g_;
};

struct ValidationIssue {
  std::string what;
  std::optional<StructureWitness> witness;
};

struct ValidationReport {
  bool ok = true;
  std::vector<ValidationIssue> issues;
  StructureReport f_structure;
  StructureReport g_structure;
};

/// Checks the standing assumptions: f normalized, nondecreasing, submodular
/// with f(A) > 0 for nonempty A; g normalized, nondecreasing, supermodular
/// with g(A) < g(S) for proper A. Exhaustive (n <= 20).
ValidationReport validate_instance(const SearchInstance& instance,
                                   double tol = 1e-9);

}  // namespace subsearch

#endif  // SUBSEARCH_INSTANCE_HPP_
