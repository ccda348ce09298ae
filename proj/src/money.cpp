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

#include "optfolio/money.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace optfolio {
namespace {

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

int DaysInMonth(int year, int month) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30,
                                  31, 31, 30, 31, 30, 31};
  if (month == 2) {
    bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    return leap ? 29 : 28;
  }
  return kDays[month - 1];
}

}  // namespace

std::optional<Money> Money::Parse(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  std::string_view whole = text;
  std::string_view frac;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    whole = text.substr(0, dot);
    frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 2 || !AllDigits(frac)) return std::nullopt;
  }
  if (!AllDigits(whole)) return std::nullopt;
  std::int64_t units = 0;
  auto [ptr, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), units);
  if (ec != std::errc() || units > INT64_MAX / kScale - 1) return std::nullopt;
  std::int64_t cents = units * kScale;
  if (!frac.empty()) {
    std::int64_t f = 0;
    std::from_chars(frac.data(), frac.data() + frac.size(), f);
    cents += frac.size() == 1 ? f * 10 : f;
  }
  return Money(negative ? -cents : cents);
}

Money Money::FromDouble(double value) {
  return Money(static_cast<std::int64_t>(std::llround(value * kScale)));
}

std::string Money::ToString() const {
  std::int64_t abs = cents_ < 0 ? -cents_ : cents_;
  std::string out = cents_ < 0 ? "-" : "";
  out += std::to_string(abs / kScale);
  std::int64_t frac = abs % kScale;
  if (frac != 0) {
    char buf[4];
    if (frac % 10 == 0) {
      std::snprintf(buf, sizeof buf, ".%d", static_cast<int>(frac / 10));
    } else {
      std::snprintf(buf, sizeof buf, ".%02d", static_cast<int>(frac));
    }
    out += buf;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, Money m) { return os << m.ToString(); }

std::optional<Date> Date::Parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto field = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
    std::string_view s = text.substr(pos, len);
    if (!AllDigits(s)) return std::nullopt;
    int v = 0;
    std::from_chars(s.data(), s.data() + s.size(), v);
    return v;
  };
  auto y = field(0, 4), m = field(5, 2), d = field(8, 2);
  if (!y || !m || !d) return std::nullopt;
  if (*m < 1 || *m > 12 || *d < 1 || *d > DaysInMonth(*y, *m)) return std::nullopt;
  return Date{*y, *m, *d};
}

std::string Date::ToString() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
  return buf;
}

}  // namespace optfolio
