// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace tsbench::cfg {

/// Parsed config value: string, integer, float, bool, or a flat array of
/// those. The accepted file syntax is a TOML subset: `key = value` lines,
/// `[table]` headers, repeatable `[[table]]` headers, `#` comments,
/// double-quoted strings, and single-line arrays.
struct ConfigValue {
  using Array = std::vector<ConfigValue>;
  std::variant<std::string, std::int64_t, double, bool, Array> data;
  int line = 0;

  const std::string& as_string(const std::string& key) const;
  std::int64_t as_int(const std::string& key) const;
  double as_double(const std::string& key) const;  // accepts ints
  bool as_bool(const std::string& key) const;
  const Array& as_array(const std::string& key) const;
};

struct ConfigTable {
  std::map<std::string, ConfigValue> entries;
  int line = 0;

  bool has(const std::string& key) const { return entries.count(key) > 0; }
};

struct ConfigDoc {
  ConfigTable root;
  std::map<std::string, ConfigTable> tables;                    // [name]
  std::vector<std::pair<std::string, ConfigTable>> table_arrays;  // [[name]]
};

ConfigDoc parse_config(const std::string& text);
ConfigDoc parse_config_file(const std::string& path);

/// Typed consumption with unknown-key rejection: read keys through the
/// getters, then call finish() to fail on anything left over.
class TableReader {
 public:
  TableReader(const ConfigTable& table, std::string context);

  std::string get_string(const std::string& key, const std::string& fallback);
  std::string require_string(const std::string& key);
  std::int64_t get_int(const std::string& key, std::int64_t fallback);
  double get_double(const std::string& key, double fallback);
  bool get_bool(const std::string& key, bool fallback);
  std::vector<double> get_double_array(const std::string& key,
                                       std::vector<double> fallback);
  std::vector<int> get_int_array(const std::string& key,
                                 std::vector<int> fallback);
  std::vector<std::string> get_string_array(const std::string& key,
                                            std::vector<std::string> fallback);
  bool has(const std::string& key) const { return table_.has(key); }

  /// Throws ConfigError naming every unconsumed key.
  void finish() const;

 private:
  const ConfigValue* take(const std::string& key);
  const ConfigTable& table_;
  std::string context_;
  std::set<std::string> seen_;
};

}  // namespace tsbench::cfg
