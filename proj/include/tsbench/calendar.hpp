// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace tsbench {

/// Calendar date. Ordering is lexicographic on (year, month, day).
struct Date {
  int year = 1970;
  int month = 1;  // 1..12
  int day = 1;    // 1..31

  auto operator<=>(const Date&) const = default;

  /// Days since 1970-01-01 (negative before the epoch).
  std::int64_t serial() const;
  static Date from_serial(std::int64_t days);

  /// 0 = Sunday .. 6 = Saturday.
  int weekday() const;

  /// Next calendar day that is not a Saturday or Sunday.
  Date next_business_day() const;

  std::string iso() const;

  /// Accepts YYYY-MM-DD or DD-MM-YYYY ('-' or '/' separators, auto-detected
  /// by the width of the leading field). Throws UnparseableDateError.
  static Date parse(const std::string& text);
  static std::optional<Date> try_parse(const std::string& text);

  static bool is_valid(int year, int month, int day);
};

}  // namespace tsbench
