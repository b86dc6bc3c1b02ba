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

#include "subsearch/value.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace subsearch {

Value Value::rational(Rational q) {
  Value v;
  v.mode_ = NumericMode::kRational;
  v.rat_ = std::move(q);
  return v;
}

Value Value::rational(long long num, long long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  return rational(Rational(num, den));
}

Value Value::real(double x) {
  if (!std::isfinite(x)) throw std::domain_error("non-finite float value");
  Value v;
  v.mode_ = NumericMode::kFloat;
  v.flt_ = x;
  return v;
}

Value Value::from_int(long long k, NumericMode mode) {
  return mode == NumericMode::kRational ? rational(k)
                                        : real(static_cast<double>(k));
}

const Rational& Value::rat() const {
  if (mode_ != NumericMode::kRational)
    throw std::logic_error("rat() on a float-mode value");
  return rat_;
}

double Value::to_double() const {
  return mode_ == NumericMode::kRational ? rat_.convert_to<double>() : flt_;
}

bool Value::is_zero() const { return sign() == 0; }

int Value::sign() const {
  if (mode_ == NumericMode::kRational) return rat_.sign();
  return flt_ < 0.0 ? -1 : (flt_ > 0.0 ? 1 : 0);
}

void Value::require_mode(const Value& o) const {
  if (mode_ != o.mode_)
    throw std::logic_error("mixed rational/float arithmetic");
}

Value Value::operator-() const {
  Value v(*this);
  if (mode_ == NumericMode::kRational)
    v.rat_ = -v.rat_;
  else
    v.flt_ = -v.flt_;
  return v;
}

Value& Value::operator+=(const Value& o) {
  require_mode(o);
  if (mode_ == NumericMode::kRational)
    rat_ += o.rat_;
  else
    flt_ += o.flt_;
  return *this;
}

Value& Value::operator-=(const Value& o) {
  require_mode(o);
  if (mode_ == NumericMode::kRational)
    rat_ -= o.rat_;
  else
    flt_ -= o.flt_;
  return *this;
}

Value& Value::operator*=(const Value& o) {
  require_mode(o);
  if (mode_ == NumericMode::kRational)
    rat_ *= o.rat_;
  else
    flt_ *= o.flt_;
  return *this;
}

Value& Value::operator/=(const Value& o) {
  require_mode(o);
  if (o.is_zero()) throw std::domain_error("division by zero");
  if (mode_ == NumericMode::kRational)
    rat_ /= o.rat_;
  else
    flt_ /= o.flt_;
  return *this;
}

int Value::compare(const Value& o) const {
  require_mode(o);
  if (mode_ == NumericMode::kRational) return rat_.compare(o.rat_);
  return flt_ < o.flt_ ? -1 : (flt_ > o.flt_ ? 1 : 0);
}

bool Value::approx_eq(const Value& o, double tol) const {
  require_mode(o);
  if (mode_ == NumericMode::kRational) return rat_ == o.rat_;
  double scale = std::max({1.0, std::abs(flt_), std::abs(o.flt_)});
  return std::abs(flt_ - o.flt_) <= tol * scale;
}

std::string Value::str() const {
  if (mode_ == NumericMode::kRational) {
    if (denominator(rat_) == 1) return numerator(rat_).str();
    return numerator(rat_).str() + "/" + denominator(rat_).str();
  }
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof(buf), flt_);
  return std::string(buf, r.ptr);
}

Value Value::parse(const std::string& text, NumericMode mode) {
  if (text.empty()) throw std::invalid_argument("empty numeric literal");
  auto slash = text.find('/');
  if (mode == NumericMode::kFloat) {
    if (slash != std::string::npos) {
      Rational q = Rational(boost::multiprecision::cpp_int(text.substr(0, slash)),
                            boost::multiprecision::cpp_int(text.substr(slash + 1)));
      return real(q.convert_to<double>());
    }
    size_t pos = 0;
    double d = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("bad float literal: " + text);
    return real(d);
  }
  if (slash != std::string::npos) {
    boost::multiprecision::cpp_int num(text.substr(0, slash));
    boost::multiprecision::cpp_int den(text.substr(slash + 1));
    if (den == 0) throw std::domain_error("rational with zero denominator");
    return rational(Rational(num, den));
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    // Exact decimal: digits.digits -> p / 10^k. No exponent support here.
    if (text.find_first_of("eE") != std::string::npos)
      throw std::invalid_argument("exponent literal in rational mode: " + text);
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    boost::multiprecision::cpp_int num(digits);
    boost::multiprecision::cpp_int den(1);
    for (size_t i = dot + 1; i < text.size(); ++i) den *= 10;
    return rational(Rational(num, den));
  }
  return rational(Rational(boost::multiprecision::cpp_int(text)));
}

}  // namespace subsearch
