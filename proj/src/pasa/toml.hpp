#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace pasa::toml {

// Parsed TOML value. Supported types: string, integer, float, bool and flat
// arrays of those. Inline tables and arrays-of-tables are rejected by parse().
struct Value {
  enum class Type { string, integer, floating, boolean, array };
  Type type = Type::string;
  std::string str;
  std::int64_t integer = 0;
  double floating = 0.0;
  bool boolean = false;
  std::vector<Value> items;
};

// Flat view of a parsed document: table headers are folded into dotted keys,
// so `beta0` under `[sim]` is stored as "sim.beta0". Getters remember which
// keys were read so callers can reject typos via unused_keys().
class Document {
 public:
  std::map<std::string, Value> values;

  bool has(const std::string& key) const { return values.count(key) != 0; }
  const Value* find(const std::string& key) const;

  std::string require_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> require_double_array(const std::string& key) const;
  std::vector<std::string> get_string_array(const std::string& key) const;

  // Full keys equal to `prefix` or starting with `prefix + '.'`.
  std::vector<std::string> keys_with_prefix(const std::string& prefix) const;
  std::vector<std::string> unused_keys() const;

 private:
  mutable std::set<std::string> used_;
};

Document parse(const std::string& text);
Document parse_file(const std::string& path);

}  // namespace pasa::toml
