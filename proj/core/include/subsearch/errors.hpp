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

#ifndef SUBSEARCH_ERRORS_HPP_
#define SUBSEARCH_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace subsearch {

/// Raised when an exact backend is asked to handle a ground set larger than
/// its enumeration cap. The message names the limiting size.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by solvers that require a series-parallel decomposable input when
/// no decomposition step applies.
class NotDecomposableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file or JSON document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace subsearch

#endif  // SUBSEARCH_ERRORS_HPP_
