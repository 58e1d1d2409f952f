// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "tsbench/csv.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "tsbench/errors.hpp"

namespace tsbench {

std::string LoadSummary::to_log_line() const {
  std::ostringstream os;
  os << "[load] path=" << path << " rows=" << rows_read << " kept=" << rows_kept
     << " dropped=" << rows_dropped << " sorted=" << (sorted_on_load ? "yes" : "no");
  return os.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool parse_number(const std::string& text, double* out) {
  std::string t = trim(text);
  // tolerate thousands separators as exported by some index data sources
  t.erase(std::remove(t.begin(), t.end(), ','), t.end());
  if (t.empty()) return false;
  const char* begin = t.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') return false;
  *out = v;
  return true;
}

}  // namespace

Series load_csv(const std::string& path, const std::string& value_column,
                const std::string& date_column, LoadSummary* summary) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");

  std::string header;
  if (!std::getline(in, header))
    throw EmptyAfterCleaningError("'" + path + "' is empty");
  // strip a UTF-8 BOM if present
  if (header.size() >= 3 && header[0] == '\xEF' && header[1] == '\xBB' &&
      header[2] == '\xBF')
    header.erase(0, 3);

  const auto columns = split_csv_line(header);
  std::ptrdiff_t date_idx = -1, value_idx = -1;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    const std::string name = trim(columns[i]);
    if (name == date_column) date_idx = static_cast<std::ptrdiff_t>(i);
    if (name == value_column) value_idx = static_cast<std::ptrdiff_t>(i);
  }
  if (date_idx < 0)
    throw MissingColumnError("column '" + date_column + "' not found in " + path);
  if (value_idx < 0)
    throw MissingColumnError("column '" + value_column + "' not found in " + path);

  LoadSummary local;
  local.path = path;

  std::vector<std::pair<Date, double>> rows;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    ++local.rows_read;
    const auto fields = split_csv_line(line);
    const auto need = static_cast<std::size_t>(std::max(date_idx, value_idx));
    if (fields.size() <= need)
      throw IoError(path + ":" + std::to_string(line_no) + ": too few fields");

    const std::string date_text = trim(fields[static_cast<std::size_t>(date_idx)]);
    if (date_text.empty())
      throw UnparseableDateError(path + ":" + std::to_string(line_no) +
                                 ": empty date cell");
    const auto date = Date::try_parse(date_text);
    if (!date)
      throw UnparseableDateError(path + ":" + std::to_string(line_no) +
                                 ": unparseable date '" + date_text + "'");

    double value = 0.0;
    if (!parse_number(fields[static_cast<std::size_t>(value_idx)], &value)) {
      ++local.rows_dropped;
      continue;
    }
    rows.emplace_back(*date, value);
  }

  if (rows.empty())
    throw EmptyAfterCleaningError("'" + path + "' has no usable rows");

  local.sorted_on_load =
      !std::is_sorted(rows.begin(), rows.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<Date> dates;
  std::vector<double> values;
  dates.reserve(rows.size());
  values.reserve(rows.size());
  for (const auto& [d, v] : rows) {
    dates.push_back(d);
    values.push_back(v);
  }
  local.rows_kept = values.size();
  if (summary) *summary = local;
  return make_series(std::move(dates), std::move(values), value_column);
}

}  // namespace tsbench
