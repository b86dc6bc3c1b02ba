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

#ifndef SUBSEARCH_VALUE_HPP_
#define SUBSEARCH_VALUE_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace subsearch {

using Rational = boost::multiprecision::cpp_rational;

/// Arithmetic mode of an instance. Rational instances are computed exactly;
/// float instances use doubles with explicit tolerances at comparison sites.
enum class NumericMode { kRational, kFloat };

inline const char* to_string(NumericMode m) {
  return m == NumericMode::kRational ? "rational" : "float";
}

/// A scalar that is either an exact rational or a finite double. The mode is
/// fixed per instance; combining values of different modes is a logic error
/// and throws. Division by zero and non-finite floats throw as well.
class Value {
 public:
  Value() : mode_(NumericMode::kRational), rat_(0), flt_(0.0) {}

  static Value rational(Rational q);
  static Value rational(long long num, long long den = 1);
  static Value real(double x);
  static Value from_int(long long k, NumericMode mode);
  static Value zero(NumericMode mode) { return from_int(0, mode); }

  NumericMode mode() const { return mode_; }
  bool is_rational() const { return mode_ == NumericMode::kRational; }

  /// Exact payload; throws std::logic_error in float mode.
  const Rational& rat() const;
  /// Lossy in rational mode, exact in float mode.
  double to_double() const;

  bool is_zero() const;
  int sign() const;  // -1, 0, +1

  Value operator-() const;
  Value& operator+=(const Value& o);
  Value& operator-=(const Value& o);
  Value& operator*=(const Value& o);
  Value& operator/=(const Value& o);

  friend Value operator+(Value a, const Value& b) { return a += b; }
  friend Value operator-(Value a, const Value& b) { return a -= b; }
  friend Value operator*(Value a, const Value& b) { return a *= b; }
  friend Value operator/(Value a, const Value& b) { return a /= b; }

  // Integer literals adapt to the value's mode.
  friend Value operator*(const Value& a, long long k) {
    return a * from_int(k, a.mode_);
  }
  friend Value operator*(long long k, const Value& a) { return a * k; }
  friend Value operator/(const Value& a, long long k) {
    return a / from_int(k, a.mode_);
  }
  friend Value operator+(const Value& a, long long k) {
    return a + from_int(k, a.mode_);
  }
  friend Value operator-(const Value& a, long long k) {
    return a - from_int(k, a.mode_);
  }
  friend Value operator-(long long k, const Value& a) {
    return from_int(k, a.mode_) - a;
  }

  /// Three-way comparison: negative, zero or positive. Exact in both modes
  /// (rational compare is cross-multiplication; float compares raw doubles).
  int compare(const Value& o) const;

  friend bool operator==(const Value& a, const Value& b) {
    return a.compare(b) == 0;
  }
  friend bool operator!=(const Value& a, const Value& b) {
    return a.compare(b) != 0;
  }
  friend bool operator<(const Value& a, const Value& b) {
    return a.compare(b) < 0;
  }
  friend bool operator<=(const Value& a, const Value& b) {
    return a.compare(b) <= 0;
  }
  friend bool operator>(const Value& a, const Value& b) {
    return a.compare(b) > 0;
  }
  friend bool operator>=(const Value& a, const Value& b) {
    return a.compare(b) >= 0;
  }

  /// Equality up to `tol` in float mode (|a-b| <= tol * max(1, |a|, |b|)),
  /// exact equality in rational mode.
  bool approx_eq(const Value& o, double tol) const;

  /// "p/q" (or "p" for integers) in rational mode, shortest round-trip
  /// decimal in float mode.
  std::string str() const;

  /// Inverse of str(). Accepts "p/q", integers, and decimal literals.
  static Value parse(const std::string& text, NumericMode mode);

 private:
  NumericMode mode_;
  Rational rat_;
  double flt_;

  void require_mode(const Value& o) const;
};

inline Value abs(const Value& v) { return v.sign() < 0 ? -v : v; }
inline const Value& min(const Value& a, const Value& b) {
  return b < a ? b : a;
}
inline const Value& max(const Value& a, const Value& b) {
  return a < b ? b : a;
}

}  // namespace subsearch

#endif  // SUBSEARCH_VALUE_HPP_
