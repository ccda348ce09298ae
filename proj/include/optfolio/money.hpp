// Copyright 2026 The optfolio Authors
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

#ifndef OPTFOLIO_MONEY_HPP_
#define OPTFOLIO_MONEY_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace optfolio {

// Exact decimal amount with two fractional digits, stored as an integer
// number of hundredths. Strikes are whole index points, so a strike k
// converts to Money::FromUnits(k).
class Money {
 public:
  static constexpr std::int64_t kScale = 100;

  constexpr Money() = default;

  static constexpr Money FromCents(std::int64_t cents) { return Money(cents); }
  static constexpr Money FromUnits(std::int64_t units) {
    return Money(units * kScale);
  }
  // Accepts an optional sign, digits, and at most two fractional digits.
  // Returns nullopt for anything else (exponents, spaces, extra digits).
  static std::optional<Money> Parse(std::string_view text);
  // Rounds to the nearest hundredth; intended for JSON numbers only.
  static Money FromDouble(double value);

  constexpr std::int64_t cents() const { return cents_; }
  double ToDouble() const { return static_cast<double>(cents_) / kScale; }
  // "174", "-100.5", "0.01": whole amounts print without a fraction,
  // otherwise the shortest of one or two digits that is exact.
  std::string ToString() const;

  constexpr bool is_zero() const { return cents_ == 0; }

  friend constexpr auto operator<=>(Money, Money) = default;

  constexpr Money operator-() const { return Money(-cents_); }
  constexpr Money& operator+=(Money other) {
    cents_ += other.cents_;
    return *this;
  }
  constexpr Money& operator-=(Money other) {
    cents_ -= other.cents_;
    return *this;
  }
  friend constexpr Money operator+(Money a, Money b) { return a += b; }
  friend constexpr Money operator-(Money a, Money b) { return a -= b; }
  friend constexpr Money operator*(std::int64_t quantity, Money m) {
    return Money(quantity * m.cents_);
  }
  friend constexpr Money operator*(Money m, std::int64_t quantity) {
    return Money(quantity * m.cents_);
  }

 private:
  constexpr explicit Money(std::int64_t cents) : cents_(cents) {}

  std::int64_t cents_ = 0;
};

constexpr Money PositivePart(Money m) { return m < Money() ? Money() : m; }

std::ostream& operator<<(std::ostream& os, Money m);

// Calendar date without time zone, ordered chronologically.
struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  // Strict YYYY-MM-DD with a valid day-of-month.
  static std::optional<Date> Parse(std::string_view text);
  std::string ToString() const;

  friend constexpr auto operator<=>(const Date&, const Date&) = default;
};

}  // namespace optfolio

#endif  // OPTFOLIO_MONEY_HPP_
