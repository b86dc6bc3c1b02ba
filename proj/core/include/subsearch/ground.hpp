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

#ifndef SUBSEARCH_GROUND_HPP_
#define SUBSEARCH_GROUND_HPP_

#include <bit>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace subsearch {

/// Subsets of the ground set as bitmasks; element i is bit i.
using Mask = std::uint64_t;

inline constexpr int kMaxGroundSize = 62;

constexpr Mask full_mask(int n) { return (Mask{1} << n) - 1; }
constexpr Mask bit(int i) { return Mask{1} << i; }
constexpr bool mask_contains(Mask a, int i) { return (a >> i) & 1; }
constexpr Mask mask_without(Mask a, int i) { return a & ~bit(i); }
inline int mask_size(Mask a) { return std::popcount(a); }

inline std::vector<int> mask_elements(Mask a) {
  std::vector<int> out;
  out.reserve(static_cast<size_t>(mask_size(a)));
  while (a) {
    out.push_back(std::countr_zero(a));
    a &= a - 1;
  }
  return out;
}

/// The fixed set of elements (hiding locations, jobs) being ordered.
/// Elements are indexed 0..n-1; labels carry the external names.
class GroundSet {
 public:
  /// Default labels are "1".."n".
  explicit GroundSet(int n) : GroundSet(default_labels(n)) {}

  explicit GroundSet(std::vector<std::string> labels)
      : labels_(std::move(labels)) {
    int n = static_cast<int>(labels_.size());
    if (n < 1 || n > kMaxGroundSize)
      throw std::invalid_argument("ground set size out of range [1, 62]");
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (static_cast<int>(seen.size()) != n)
      throw std::invalid_argument("ground set labels must be unique");
  }

  int size() const { return static_cast<int>(labels_.size()); }
  Mask full() const { return full_mask(size()); }
  bool valid(Mask a) const { return (a & ~full()) == 0; }

  const std::string& label(int i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }

  GroundSet select(Mask keep) const {
    std::vector<std::string> out;
    for (int i : mask_elements(keep)) out.push_back(labels_[i]);
    return GroundSet(std::move(out));
  }

  std::string subset_to_string(Mask a) const {
    std::string s = "{";
    bool first = true;
    for (int i : mask_elements(a)) {
      if (!first) s += ",";
      s += labels_[i];
      first = false;
    }
    return s + "}";
  }

 private:
  static std::vector<std::string> default_labels(int n) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<size_t>(n > 0 ? n : 0));
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));
    return labels;
  }

  std::vector<std::string> labels_;
};

}  // namespace subsearch

#endif  // SUBSEARCH_GROUND_HPP_
