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

#ifndef SUBSEARCH_GENERATORS_HPP_
#define SUBSEARCH_GENERATORS_HPP_

#include <cstdint>
#include <string>

namespace subsearch {

/// Deterministic fixture generation. Families:
///   coverage         tabular coverage-function f, dual-coverage g
///   concave_modular  piecewise-linear concave h over a modular load as f
///   modular          modular f and g
///   tree             rooted-tree expanding-search f, modular g
///   gsp              generalized series-parallel precedence schedule
///   kuniform         modular f with k-uniform subset weights as g
/// All emit rational instances that pass validation. The same seed always
/// produces byte-identical output.
struct GenRequest {
  std::string family;
  int n = 4;
  int k = 2;  // kuniform only
  std::uint64_t seed = 0;
};

std::string generate_instance_json(const GenRequest& request);

}  // namespace subsearch

#endif  // SUBSEARCH_GENERATORS_HPP_
