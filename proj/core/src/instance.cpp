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

#include "subsearch/instance.hpp"

#include <algorithm>

namespace subsearch {

bool SearchOrder::is_permutation(int n) const {
  if (static_cast<int>(perm.size()) != n) return false;
  Mask seen = 0;
  for (int j : perm) {
    if (j < 0 || j >= n || mask_contains(seen, j)) return false;
    seen |= bit(j);
  }
  return true;
}

SearchInstance::SearchInstance(SetFunctionPtr f, SetFunctionPtr g)
    : f_(std::move(f)), g_(std::move(g)) {
  if (!f_ || !g_) throw std::invalid_argument("null oracle");
  if (f_->n() != g_->n())
    throw std::invalid_argument("f and g must share a ground set");
  if (f_->ground().labels() != g_->ground().labels())
    throw std::invalid_argument("f and g must share ground set labels");
  if (f_->mode() != g_->mode())
    throw std::logic_error("f and g must use the same arithmetic mode");
}

SearchInstance SearchInstance::restricted(Mask keep) const {
  return SearchInstance(restrict_to(f_, keep), restrict_to(g_, keep));
}

SearchInstance SearchInstance::contracted(Mask by) const {
  return SearchInstance(contract(f_, by), contract(g_, by));
}

ValidationReport validate_instance(const SearchInstance& instance,
                                   double tol) {
  ValidationReport report;
  auto fail = [&](std::string what, std::optional<StructureWitness> w = {}) {
    report.ok = false;
    report.issues.push_back(ValidationIssue{std::move(what), w});
  };

  report.f_structure = verify_structure(instance.f(), tol);
  report.g_structure = verify_structure(instance.g(), tol);

  const StructureReport& fs = report.f_structure;
  if (!fs.flags.normalized) fail("f is not normalized", fs.normalized_witness);
  if (!fs.flags.nondecreasing)
    fail("f is not nondecreasing", fs.nondecreasing_witness);
  if (!fs.flags.submodular) fail("f is not submodular", fs.submodular_witness);

  const StructureReport& gs = report.g_structure;
  if (!gs.flags.normalized) fail("g is not normalized", gs.normalized_witness);
  if (!gs.flags.nondecreasing)
    fail("g is not nondecreasing", gs.nondecreasing_witness);
  if (!gs.flags.supermodular)
    fail("g is not supermodular", gs.supermodular_witness);

  const int n = instance.n();
  const Mask full = full_mask(n);
  // f(A) > 0 for nonempty A; with monotonicity the singletons suffice.
  for (int s = 0; s < n; ++s) {
    if (instance.f_of(bit(s)).sign() <= 0)
      fail("f must be positive on nonempty sets; zero-cost element " +
               instance.ground().label(s),
           StructureWitness{bit(s), s, -1});
  }
  // g(A) < g(S) for proper A; with monotonicity the co-singletons suffice.
  Value gfull = instance.g_of(full);
  for (int s = 0; s < n; ++s) {
    Value v = instance.g_of(mask_without(full, s));
    bool strict = instance.mode() == NumericMode::kRational
                      ? v < gfull
                      : v < gfull && !v.approx_eq(gfull, tol);
    if (!strict)
      fail("g must be strictly below g(S) on proper subsets; element " +
               instance.ground().label(s) + " carries no weight",
           StructureWitness{mask_without(full, s), s, -1});
  }
  return report;
}

}  // namespace subsearch
