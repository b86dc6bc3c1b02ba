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

#include "subsearch/set_function.hpp"

#include <algorithm>
#include <set>

#include "subsearch/errors.hpp"

namespace subsearch {

Value MemoizedFunction::do_eval(Mask a) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(a);
    if (it != memo_.end()) return it->second;
  }
  Value v = compute(a);
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.emplace(a, std::move(v)).first->second;
}

TabularFunction::TabularFunction(GroundSet ground, NumericMode mode,
                                 std::vector<Value> values,
                                 StructureFlags declared)
    : SetFunction(std::move(ground), mode, declared),
      values_(std::move(values)) {
  if (n() > 26)
    throw CapacityError("tabular oracle limited to 26 elements");
  if (values_.size() != (size_t{1} << n()))
    throw std::invalid_argument("tabular oracle needs 2^n values");
  for (const Value& v : values_)
    if (v.mode() != this->mode())
      throw std::logic_error("tabular value mode mismatch");
}

namespace {
StructureFlags modular_flags(const std::vector<Value>& weights) {
  bool nondecreasing = true;
  for (const Value& w : weights)
    if (w.sign() < 0) nondecreasing = false;
  return StructureFlags{.normalized = true,
                        .nondecreasing = nondecreasing,
                        .submodular = true,
                        .supermodular = true,
                        .modular = true};
}
}  // namespace

ModularFunction::ModularFunction(GroundSet ground, NumericMode mode,
                                 std::vector<Value> weights)
    : SetFunction(std::move(ground), mode, modular_flags(weights)),
      weights_(std::move(weights)) {
  if (static_cast<int>(weights_.size()) != n())
    throw std::invalid_argument("modular oracle needs n weights");
  for (const Value& w : weights_) {
    if (w.mode() != this->mode())
      throw std::logic_error("modular weight mode mismatch");
  }
}

Value ModularFunction::do_eval(Mask a) const {
  Value sum = Value::zero(mode());
  for (int i : mask_elements(a)) sum += weights_[i];
  return sum;
}

SetFunctionPtr make_tabular(GroundSet ground, NumericMode mode,
                            std::vector<Value> values,
                            StructureFlags declared) {
  return std::make_shared<TabularFunction>(std::move(ground), mode,
                                           std::move(values), declared);
}

SetFunctionPtr make_modular(GroundSet ground, NumericMode mode,
                            std::vector<Value> weights) {
  return std::make_shared<ModularFunction>(std::move(ground), mode,
                                           std::move(weights));
}

namespace {

class DualFunction final : public MemoizedFunction {
 public:
  explicit DualFunction(SetFunctionPtr g)
      : MemoizedFunction(g->ground(), g->mode(), dual_flags(*g)),
        parent_(std::move(g)),
        total_(parent_->eval(parent_->ground().full())) {
    if (!parent_->eval(0).is_zero())
      throw std::invalid_argument("dual requires a normalized function");
  }

  const SetFunctionPtr& parent() const { return parent_; }

 private:
  static StructureFlags dual_flags(const SetFunction& g) {
    StructureFlags d = g.declared();
    std::swap(d.submodular, d.supermodular);
    d.normalized = true;
    return d;
  }

  Value compute(Mask a) const override {
    return total_ - parent_->eval(ground().full() & ~a);
  }

  SetFunctionPtr parent_;
  Value total_;
};

// Shared behavior of restriction and contraction: a compact local ground
// set whose element i corresponds to parent element map[i].
class ReindexedFunction : public MemoizedFunction {
 public:
  ReindexedFunction(SetFunctionPtr parent, Mask kept, StructureFlags flags)
      : MemoizedFunction(parent->ground().select(kept), parent->mode(), flags),
        parent_(std::move(parent)),
        map_(mask_elements(kept)) {}

  const std::vector<int>& parent_index_map() const override { return map_; }

  Mask to_parent(Mask local) const {
    Mask out = 0;
    for (int i = 0; i < static_cast<int>(map_.size()); ++i)
      if (mask_contains(local, i)) out |= bit(map_[i]);
    return out;
  }

 protected:
  const SetFunctionPtr parent_;

 private:
  std::vector<int> map_;
};

StructureFlags carried_flags(const SetFunction& f) {
  StructureFlags d = f.declared();
  d.normalized = true;  // derived forms subtract the base value
  return d;
}

class ContractionFunction final : public ReindexedFunction {
 public:
  // Takes the pointer by const reference so the mask helpers below may
  // dereference it regardless of argument evaluation order.
  ContractionFunction(const SetFunctionPtr& f, Mask by)
      : ReindexedFunction(f, complement_of(*f, by), carried_flags(*f)),
        by_(by),
        base_(parent_->eval(by)) {}

 private:
  static Mask complement_of(const SetFunction& f, Mask by) {
    if (!f.ground().valid(by))
      throw std::invalid_argument("contraction mask out of range");
    return f.ground().full() & ~by;
  }

  Value compute(Mask a) const override {
    return parent_->eval(by_ | to_parent(a)) - base_;
  }

  Mask by_;
  Value base_;
};

class RestrictionFunction final : public ReindexedFunction {
 public:
  RestrictionFunction(const SetFunctionPtr& f, Mask keep)
      : ReindexedFunction(f, checked(*f, keep), carried_flags(*f)) {}

 private:
  static Mask checked(const SetFunction& f, Mask keep) {
    if (!f.ground().valid(keep) || keep == 0)
      throw std::invalid_argument("restriction mask out of range");
    return keep;
  }

  Value compute(Mask a) const override { return parent_->eval(to_parent(a)); }
};

class DirectSumFunction final : public MemoizedFunction {
 public:
  DirectSumFunction(SetFunctionPtr f1, SetFunctionPtr f2)
      : MemoizedFunction(combined_ground(*f1, *f2), f1->mode(),
                         combined_flags(*f1, *f2)),
        f1_(std::move(f1)),
        f2_(std::move(f2)) {}

 private:
  static GroundSet combined_ground(const SetFunction& a,
                                   const SetFunction& b) {
    std::vector<std::string> labels = a.ground().labels();
    for (const std::string& l : b.ground().labels()) labels.push_back(l);
    std::set<std::string> uniq(labels.begin(), labels.end());
    if (uniq.size() != labels.size())
      throw std::invalid_argument("direct sum of overlapping ground sets");
    return GroundSet(std::move(labels));
  }

  static StructureFlags combined_flags(const SetFunction& a,
                                       const SetFunction& b) {
    if (a.mode() != b.mode())
      throw std::logic_error("direct sum mode mismatch");
    const StructureFlags& x = a.declared();
    const StructureFlags& y = b.declared();
    return StructureFlags{.normalized = x.normalized && y.normalized,
                          .nondecreasing = x.nondecreasing && y.nondecreasing,
                          .submodular = x.submodular && y.submodular,
                          .supermodular = x.supermodular && y.supermodular,
                          .modular = x.modular && y.modular};
  }

  Value compute(Mask a) const override {
    Mask left = a & full_mask(f1_->n());
    Mask right = a >> f1_->n();
    return f1_->eval(left) + f2_->eval(right);
  }

  SetFunctionPtr f1_, f2_;
};

}  // namespace

SetFunctionPtr dual(SetFunctionPtr g) {
  return std::make_shared<DualFunction>(std::move(g));
}

SetFunctionPtr contract(SetFunctionPtr f, Mask a) {
  if (a == 0) return f;  // empty contraction is the function itself
  return std::make_shared<ContractionFunction>(f, a);
}

SetFunctionPtr restrict_to(SetFunctionPtr f, Mask a) {
  if (a == f->ground().full()) return f;
  return std::make_shared<RestrictionFunction>(f, a);
}

SetFunctionPtr direct_sum(SetFunctionPtr f1, SetFunctionPtr f2) {
  return std::make_shared<DirectSumFunction>(std::move(f1), std::move(f2));
}

Mask lift_mask(const SetFunction& derived, Mask local) {
  const std::vector<int>& map = derived.parent_index_map();
  if (map.empty()) return local;
  Mask out = 0;
  for (int i = 0; i < static_cast<int>(map.size()); ++i)
    if (mask_contains(local, i)) out |= bit(map[i]);
  return out;
}

StructureReport verify_structure(const SetFunction& f, double tol) {
  const int n = f.n();
  if (n > 20)
    throw CapacityError("verify_structure is exhaustive; limited to n <= 20");
  const Mask full = full_mask(n);

  std::vector<Value> table(size_t{1} << n);
  for (Mask a = 0; a <= full; ++a) table[a] = f.eval(a);

  StructureReport report;
  auto ge = [&](const Value& x, const Value& y) {
    // x >= y up to tolerance in float mode, exact otherwise.
    return x >= y || x.approx_eq(y, tol);
  };

  report.flags.normalized = table[0].approx_eq(Value::zero(f.mode()), tol);
  if (!report.flags.normalized)
    report.normalized_witness = StructureWitness{0, -1, -1};

  report.flags.nondecreasing = true;
  for (Mask a = 0; a <= full && report.flags.nondecreasing; ++a) {
    for (int s = 0; s < n; ++s) {
      if (mask_contains(a, s)) continue;
      if (!ge(table[a | bit(s)], table[a])) {
        report.flags.nondecreasing = false;
        report.nondecreasing_witness = StructureWitness{a, s, -1};
        break;
      }
    }
  }

  report.flags.submodular = true;
  report.flags.supermodular = true;
  for (Mask a = 0; a <= full; ++a) {
    if (!report.flags.submodular && !report.flags.supermodular) break;
    for (int s = 0; s < n; ++s) {
      if (mask_contains(a, s)) continue;
      for (int t = s + 1; t < n; ++t) {
        if (mask_contains(a, t)) continue;
        Value lhs = table[a | bit(s)] + table[a | bit(t)];
        Value rhs = table[a | bit(s) | bit(t)] + table[a];
        if (report.flags.submodular && !ge(lhs, rhs)) {
          report.flags.submodular = false;
          report.submodular_witness = StructureWitness{a, s, t};
        }
        if (report.flags.supermodular && !ge(rhs, lhs)) {
          report.flags.supermodular = false;
          report.supermodular_witness = StructureWitness{a, s, t};
        }
      }
    }
  }

  report.flags.modular = report.flags.submodular && report.flags.supermodular &&
                         report.flags.normalized;
  return report;
}

Value curvature(const SetFunction& f) {
  const int n = f.n();
  const Mask full = full_mask(n);
  Value total = f.eval(full);
  std::optional<Value> worst;
  for (int s = 0; s < n; ++s) {
    Value fs = f.eval(bit(s));
    if (fs.sign() <= 0)
      throw std::domain_error("curvature requires positive singleton values");
    Value ratio = (fs + f.eval(mask_without(full, s)) - total) / fs;
    if (!worst || ratio > *worst) worst = ratio;
  }
  return *worst;
}

std::vector<Value> base_polyhedron_vertex(const SetFunction& f,
                                          const std::vector<int>& order) {
  const int n = f.n();
  if (static_cast<int>(order.size()) != n)
    throw std::invalid_argument("order must be a permutation of the ground set");
  std::vector<Value> x(static_cast<size_t>(n), Value::zero(f.mode()));
  Mask prefix = 0;
  for (int j : order) {
    if (j < 0 || j >= n || mask_contains(prefix, j))
      throw std::invalid_argument("order must be a permutation of the ground set");
    prefix |= bit(j);
    x[j] = f.eval(prefix) - f.eval(mask_without(prefix, j));
  }
  return x;
}

}  // namespace subsearch
