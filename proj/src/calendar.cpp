// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "tsbench/calendar.hpp"

#include <array>
#include <cctype>
#include <cstdio>

#include "tsbench/errors.hpp"

namespace tsbench {

namespace {

// Howard Hinnant's civil-days algorithms.
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097LL + static_cast<std::int64_t>(doe) - 719468;
}

Date civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m),
              static_cast<int>(d)};
}

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
  static constexpr std::array<int, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                  31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap(y)) return 29;
  return lengths[static_cast<std::size_t>(m - 1)];
}

bool split_fields(const std::string& s, int out[3], int widths[3]) {
  int field = 0, value = 0, width = 0;
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      value = value * 10 + (c - '0');
      ++width;
      if (width > 4) return false;
    } else if (c == '-' || c == '/') {
      if (field >= 2 || width == 0) return false;
      out[field] = value;
      widths[field] = width;
      ++field;
      value = 0;
      width = 0;
    } else {
      return false;
    }
  }
  if (field != 2 || width == 0) return false;
  out[2] = value;
  widths[2] = width;
  return true;
}

}  // namespace

std::int64_t Date::serial() const {
  return days_from_civil(year, static_cast<unsigned>(month),
                         static_cast<unsigned>(day));
}

Date Date::from_serial(std::int64_t days) { return civil_from_days(days); }

int Date::weekday() const {
  const std::int64_t z = serial();
  return static_cast<int>(((z % 7) + 11) % 7);  // 1970-01-01 was a Thursday
}

Date Date::next_business_day() const {
  Date d = from_serial(serial() + 1);
  while (d.weekday() == 0 || d.weekday() == 6) d = from_serial(d.serial() + 1);
  return d;
}

std::string Date::iso() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  return buf;
}

bool Date::is_valid(int year, int month, int day) {
  if (year < 1 || year > 9999) return false;
  if (month < 1 || month > 12) return false;
  if (day < 1 || day > days_in_month(year, month)) return false;
  return true;
}

std::optional<Date> Date::try_parse(const std::string& text) {
  int f[3] = {0, 0, 0};
  int w[3] = {0, 0, 0};
  if (!split_fields(text, f, w)) return std::nullopt;
  int y, m, d;
  if (w[0] == 4) {  // YYYY-MM-DD
    y = f[0];
    m = f[1];
    d = f[2];
  } else if (w[2] == 4) {  // DD-MM-YYYY
    y = f[2];
    m = f[1];
    d = f[0];
  } else {
    return std::nullopt;
  }
  if (!is_valid(y, m, d)) return std::nullopt;
  return Date{y, m, d};
}

Date Date::parse(const std::string& text) {
  auto d = try_parse(text);
  if (!d) throw UnparseableDateError("unparseable date: '" + text + "'");
  return *d;
}

}  // namespace tsbench
