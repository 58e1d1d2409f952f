// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "tsbench/series.hpp"

namespace tsbench {

struct LoadSummary {
  std::string path;
  std::size_t rows_read = 0;      // data rows seen (excluding header)
  std::size_t rows_kept = 0;
  std::size_t rows_dropped = 0;   // missing or unparseable value cells
  bool sorted_on_load = false;    // input rows were not already ascending

  std::string to_log_line() const;
};

/// Loads a dated value column from a CSV file (UTF-8, comma-delimited,
/// header row required). Rows with empty value cells are dropped and
/// counted in the summary; the result is sorted by date.
Series load_csv(const std::string& path, const std::string& value_column = "Close",
                const std::string& date_column = "Date",
                LoadSummary* summary = nullptr);

/// Splits one CSV record, honoring double quotes; commas inside quotes do
/// not separate fields and doubled quotes unescape to one.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace tsbench
