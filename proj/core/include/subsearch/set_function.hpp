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

#ifndef SUBSEARCH_SET_FUNCTION_HPP_
#define SUBSEARCH_SET_FUNCTION_HPP_

#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "subsearch/ground.hpp"
#include "subsearch/value.hpp"

namespace subsearch {

/// Structural properties a set function may declare. Declarations are
/// trusted by the solvers; verify_structure() checks them exhaustively.
struct StructureFlags {
  bool normalized = false;     // value at the empty set is 0
  bool nondecreasing = false;  // monotone under inclusion
  bool submodular = false;
  bool supermodular = false;
  bool modular = false;
};

/// Value oracle for a set function over a fixed ground set. Oracles are
/// immutable after construction and safe to evaluate concurrently; any
/// internal memoization is synchronized.
class SetFunction {
 public:
  SetFunction(GroundSet ground, NumericMode mode, StructureFlags declared)
      : ground_(std::move(ground)), mode_(mode), declared_(declared) {}
  virtual ~SetFunction() = default;

  SetFunction(const SetFunction&) = delete;
  SetFunction& operator=(const SetFunction&) = delete;

  const GroundSet& ground() const { return ground_; }
  int n() const { return ground_.size(); }
  NumericMode mode() const { return mode_; }
  const StructureFlags& declared() const { return declared_; }

  Value eval(Mask a) const {
    if (!ground_.valid(a))
      throw std::invalid_argument("subset mask out of range for ground set");
    return do_eval(a);
  }
  Value operator()(Mask a) const { return eval(a); }

  /// For oracles produced by restrict()/contract(): maps local element
  /// indices back to the parent oracle's indices. Empty otherwise.
  virtual const std::vector<int>& parent_index_map() const {
    static const std::vector<int> kEmpty;
    return kEmpty;
  }

 protected:
  virtual Value do_eval(Mask a) const = 0;

 private:
  GroundSet ground_;
  NumericMode mode_;
  StructureFlags declared_;
};

using SetFunctionPtr = std::shared_ptr<const SetFunction>;

/// Base for derived oracles (dual, contraction, restriction, direct sum).
/// Evaluations are memoized per mask; recursive solvers re-query heavily.
class MemoizedFunction : public SetFunction {
 public:
  using SetFunction::SetFunction;

 protected:
  Value do_eval(Mask a) const final;
  virtual Value compute(Mask a) const = 0;

 private:
  mutable std::mutex mu_;
  mutable std::unordered_map<Mask, Value> memo_;
};

/// Explicit table of 2^n values indexed by mask.
class TabularFunction : public SetFunction {
 public:
  TabularFunction(GroundSet ground, NumericMode mode, std::vector<Value> values,
                  StructureFlags declared);

 protected:
  Value do_eval(Mask a) const override { return values_[a]; }

 private:
  std::vector<Value> values_;
};

/// Weight vector; f(A) is the sum of weights over A.
class ModularFunction : public SetFunction {
 public:
  ModularFunction(GroundSet ground, NumericMode mode,
                  std::vector<Value> weights);

  const std::vector<Value>& weights() const { return weights_; }

 protected:
  Value do_eval(Mask a) const override;

 private:
  std::vector<Value> weights_;
};

SetFunctionPtr make_tabular(GroundSet ground, NumericMode mode,
                            std::vector<Value> values, StructureFlags declared);
SetFunctionPtr make_modular(GroundSet ground, NumericMode mode,
                            std::vector<Value> weights);

/// Dual g#(A) = g(S) - g(complement of A). Requires g normalized; swaps the
/// submodular and supermodular roles and preserves monotonicity.
SetFunctionPtr dual(SetFunctionPtr g);

/// Contraction f_A(B) = f(A u B) - f(A) on the re-indexed ground set S \ A.
SetFunctionPtr contract(SetFunctionPtr f, Mask a);

/// Restriction of f to the re-indexed ground set A.
SetFunctionPtr restrict_to(SetFunctionPtr f, Mask a);

/// Direct sum on the concatenated ground set (f1's elements first). Label
/// collisions are reported as overlapping ground sets.
SetFunctionPtr direct_sum(SetFunctionPtr f1, SetFunctionPtr f2);

/// Lifts a mask over a derived oracle's local ground set to its parent.
Mask lift_mask(const SetFunction& derived, Mask local);

struct StructureWitness {
  Mask a = 0;
  int s = -1;
  int t = -1;
};

/// Outcome of the exhaustive structure check. Each verified flag carries a
/// witness violation when it fails.
struct StructureReport {
  StructureFlags flags;
  std::optional<StructureWitness> normalized_witness;
  std::optional<StructureWitness> nondecreasing_witness;
  std::optional<StructureWitness> submodular_witness;
  std::optional<StructureWitness> supermodular_witness;
};

/// Exhaustively decides the structural flags of f. Exact in rational mode;
/// within `tol` in float mode. Ground sets above 20 elements raise
/// CapacityError. Submodularity is checked through diminishing pair
/// marginals: f(A+s) + f(A+t) >= f(A+s+t) + f(A).
StructureReport verify_structure(const SetFunction& f, double tol = 1e-9);

/// Total curvature 1 - min_s (f(S) - f(S-s)) / f(s). Requires positive
/// singleton values.
Value curvature(const SetFunction& f);

/// Edmonds greedy vertex of the base polyhedron for the permutation order:
/// x_j = f(S_j) - f(S_j - j) with S_j the prefix of order up to j.
std::vector<Value> base_polyhedron_vertex(const SetFunction& f,
                                          const std::vector<int>& order);

}  // namespace subsearch

#endif  // SUBSEARCH_SET_FUNCTION_HPP_
