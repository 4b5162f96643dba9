// Copyright 2026 The EvalAdvisor Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EVALADVISOR_RATIONAL_H_
#define EVALADVISOR_RATIONAL_H_

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace evaladvisor {

// Exact non-negative-denominator fraction kept in lowest terms. Used for rule
// accuracy, confidences and retrieval scores so that accuracy * coverage is
// always an integer and comparisons never suffer rounding.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den);
  static Rational Integer(std::int64_t value) { return Rational(value, 1); }

  // Parses "3/4", "0.8" or "1". Throws Error(kInvalidInput) on bad text.
  static Rational Parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double ToDouble() const { return static_cast<double>(num_) / den_; }
  std::string ToString() const;

  friend Rational operator*(const Rational &a, const Rational &b);
  friend bool operator==(const Rational &a, const Rational &b) = default;
  friend std::strong_ordering operator<=>(const Rational &a,
                                          const Rational &b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace evaladvisor

#endif  // EVALADVISOR_RATIONAL_H_
