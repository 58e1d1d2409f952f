// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "tsbench/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tsbench/errors.hpp"

namespace tsbench::cfg {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

// strips a trailing comment that is not inside a quoted string
std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

ConfigValue parse_scalar(const std::string& raw, int line_no) {
  const std::string text = trim(raw);
  if (text.empty()) fail(line_no, "empty value");

  ConfigValue value;
  value.line = line_no;

  if (text.front() == '"') {
    if (text.size() < 2 || text.back() != '"')
      fail(line_no, "unterminated string");
    std::string s;
    for (std::size_t i = 1; i + 1 < text.size(); ++i) {
      if (text[i] == '\\' && i + 2 < text.size()) {
        ++i;
        switch (text[i]) {
          case 'n': s += '\n'; break;
          case 't': s += '\t'; break;
          case '"': s += '"'; break;
          case '\\': s += '\\'; break;
          default: fail(line_no, std::string("bad escape \\") + text[i]);
        }
      } else if (text[i] == '"') {
        fail(line_no, "stray quote inside string");
      } else {
        s += text[i];
      }
    }
    value.data = s;
    return value;
  }
  if (text == "true" || text == "false") {
    value.data = (text == "true");
    return value;
  }

  const bool looks_float = text.find_first_of(".eE") != std::string::npos &&
                           text.find_first_not_of("+-0123456789.eE") ==
                               std::string::npos;
  const char* begin = text.c_str();
  char* end = nullptr;
  if (!looks_float) {
    const long long i = std::strtoll(begin, &end, 10);
    if (end != begin && *end == '\0') {
      value.data = static_cast<std::int64_t>(i);
      return value;
    }
  }
  const double d = std::strtod(begin, &end);
  if (end != begin && *end == '\0') {
    value.data = d;
    return value;
  }
  fail(line_no, "cannot parse value '" + text + "' (strings need quotes)");
}

ConfigValue parse_value(const std::string& raw, int line_no) {
  const std::string text = trim(raw);
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') fail(line_no, "unterminated array");
    ConfigValue value;
    value.line = line_no;
    ConfigValue::Array items;
    std::string body = text.substr(1, text.size() - 2);
    std::string cur;
    bool quoted = false;
    for (char c : body) {
      if (c == '"') quoted = !quoted;
      if (c == ',' && !quoted) {
        if (!trim(cur).empty()) items.push_back(parse_scalar(cur, line_no));
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!trim(cur).empty()) items.push_back(parse_scalar(cur, line_no));
    value.data = std::move(items);
    return value;
  }
  return parse_scalar(raw, line_no);
}

bool valid_key(const std::string& key) {
  if (key.empty()) return false;
  for (char c : key)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'))
      return false;
  return true;
}

}  // namespace

const std::string& ConfigValue::as_string(const std::string& key) const {
  if (const auto* s = std::get_if<std::string>(&data)) return *s;
  throw ConfigError("key '" + key + "' (line " + std::to_string(line) +
                    "): expected a quoted string");
}

std::int64_t ConfigValue::as_int(const std::string& key) const {
  if (const auto* i = std::get_if<std::int64_t>(&data)) return *i;
  throw ConfigError("key '" + key + "' (line " + std::to_string(line) +
                    "): expected an integer");
}

double ConfigValue::as_double(const std::string& key) const {
  if (const auto* d = std::get_if<double>(&data)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&data))
    return static_cast<double>(*i);
  throw ConfigError("key '" + key + "' (line " + std::to_string(line) +
                    "): expected a number");
}

bool ConfigValue::as_bool(const std::string& key) const {
  if (const auto* b = std::get_if<bool>(&data)) return *b;
  throw ConfigError("key '" + key + "' (line " + std::to_string(line) +
                    "): expected true or false");
}

const ConfigValue::Array& ConfigValue::as_array(const std::string& key) const {
  if (const auto* a = std::get_if<Array>(&data)) return *a;
  throw ConfigError("key '" + key + "' (line " + std::to_string(line) +
                    "): expected an array");
}

ConfigDoc parse_config(const std::string& text) {
  ConfigDoc doc;
  ConfigTable* current = &doc.root;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.front() == '[') {
      const bool array_table = line.size() > 1 && line[1] == '[';
      const std::string closer = array_table ? "]]" : "]";
      if (line.size() < 2 + closer.size() ||
          line.substr(line.size() - closer.size()) != closer)
        fail(line_no, "malformed table header");
      const std::string name = trim(line.substr(
          array_table ? 2 : 1, line.size() - 2 * (array_table ? 2 : 1)));
      if (!valid_key(name)) fail(line_no, "bad table name '" + name + "'");
      if (array_table) {
        doc.table_arrays.emplace_back(name, ConfigTable{{}, line_no});
        current = &doc.table_arrays.back().second;
      } else {
        if (doc.tables.count(name))
          fail(line_no, "duplicate table [" + name + "]");
        current = &doc.tables[name];
        current->line = line_no;
      }
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (!valid_key(key)) fail(line_no, "bad key '" + key + "'");
    if (current->entries.count(key)) fail(line_no, "duplicate key '" + key + "'");
    current->entries[key] = parse_value(line.substr(eq + 1), line_no);
  }
  return doc;
}

ConfigDoc parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

TableReader::TableReader(const ConfigTable& table, std::string context)
    : table_(table), context_(std::move(context)) {}

const ConfigValue* TableReader::take(const std::string& key) {
  auto it = table_.entries.find(key);
  if (it == table_.entries.end()) return nullptr;
  seen_.insert(key);
  return &it->second;
}

std::string TableReader::get_string(const std::string& key,
                                    const std::string& fallback) {
  const ConfigValue* v = take(key);
  return v ? v->as_string(key) : fallback;
}

std::string TableReader::require_string(const std::string& key) {
  const ConfigValue* v = take(key);
  if (!v)
    throw ConfigError(context_ + ": missing required key '" + key + "'");
  return v->as_string(key);
}

std::int64_t TableReader::get_int(const std::string& key, std::int64_t fallback) {
  const ConfigValue* v = take(key);
  return v ? v->as_int(key) : fallback;
}

double TableReader::get_double(const std::string& key, double fallback) {
  const ConfigValue* v = take(key);
  return v ? v->as_double(key) : fallback;
}

bool TableReader::get_bool(const std::string& key, bool fallback) {
  const ConfigValue* v = take(key);
  return v ? v->as_bool(key) : fallback;
}

std::vector<double> TableReader::get_double_array(const std::string& key,
                                                  std::vector<double> fallback) {
  const ConfigValue* v = take(key);
  if (!v) return fallback;
  std::vector<double> out;
  for (const ConfigValue& item : v->as_array(key)) out.push_back(item.as_double(key));
  return out;
}

std::vector<int> TableReader::get_int_array(const std::string& key,
                                            std::vector<int> fallback) {
  const ConfigValue* v = take(key);
  if (!v) return fallback;
  std::vector<int> out;
  for (const ConfigValue& item : v->as_array(key))
    out.push_back(static_cast<int>(item.as_int(key)));
  return out;
}

std::vector<std::string> TableReader::get_string_array(
    const std::string& key, std::vector<std::string> fallback) {
  const ConfigValue* v = take(key);
  if (!v) return fallback;
  std::vector<std::string> out;
  for (const ConfigValue& item : v->as_array(key)) out.push_back(item.as_string(key));
  return out;
}

void TableReader::finish() const {
  std::string unknown;
  for (const auto& [key, value] : table_.entries) {
    if (seen_.count(key)) continue;
    if (!unknown.empty()) unknown += ", ";
    unknown += "'" + key + "' (line " + std::to_string(value.line) + ")";
  }
  if (!unknown.empty())
    throw ConfigError(context_ + ": unknown key(s) " + unknown);
}

}  // namespace tsbench::cfg
