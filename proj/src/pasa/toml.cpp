#include "pasa/toml.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>

#include "pasa/errors.hpp"

namespace pasa::toml {
namespace {

[[noreturn]] void fail(int line, const std::string& message) {
  throw ConfigError("config line " + std::to_string(line) + ": " + message);
}

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool bare_key_ok(const std::string& key) {
  if (key.empty()) return false;
  for (char c : key) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') {
      return false;
    }
  }
  return true;
}

// Dotted sequence of bare keys ("csv.levels.gender").
void validate_key_path(const std::string& path, int line) {
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = path.find('.', start);
    const std::string piece =
        trim(dot == std::string::npos ? path.substr(start) : path.substr(start, dot - start));
    if (!bare_key_ok(piece)) fail(line, "invalid key '" + path + "'");
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
}

struct Statement {
  std::string text;
  int line = 0;
};

// Cut the document into logical statements: newlines end a statement unless
// inside an array, comments run to end of line, strings may not span lines.
std::vector<Statement> split_statements(const std::string& text) {
  std::vector<Statement> raw;
  std::string current;
  int line = 1;
  int start_line = 1;
  int depth = 0;
  char quote = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quote != 0) {
      if (c == '\n') fail(line, "unterminated string");
      current.push_back(c);
      if (c == '\\' && quote == '"' && i + 1 < text.size()) {
        current.push_back(text[++i]);
      } else if (c == quote) {
        quote = 0;
      }
      continue;
    }
    switch (c) {
      case '"':
      case '\'':
        quote = c;
        current.push_back(c);
        break;
      case '#':
        while (i + 1 < text.size() && text[i + 1] != '\n') ++i;
        break;
      case '\n':
        ++line;
        if (depth == 0) {
          raw.push_back({std::move(current), start_line});
          current.clear();
          start_line = line;
        } else {
          current.push_back(' ');
        }
        break;
      case '[':
        ++depth;
        current.push_back(c);
        break;
      case ']':
        if (--depth < 0) fail(line, "unbalanced ']'");
        current.push_back(c);
        break;
      default:
        current.push_back(c);
        break;
    }
  }
  if (quote != 0) fail(line, "unterminated string");
  if (depth != 0) fail(line, "unterminated array");
  raw.push_back({std::move(current), start_line});

  std::vector<Statement> out;
  for (Statement& s : raw) {
    s.text = trim(s.text);
    if (!s.text.empty()) out.push_back(std::move(s));
  }
  return out;
}

std::string unescape_basic(const std::string& body, int line) {
  std::string out;
  out.reserve(body.size());
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] != '\\') {
      out.push_back(body[i]);
      continue;
    }
    if (++i == body.size()) fail(line, "dangling escape in string");
    switch (body[i]) {
      case '"': out.push_back('"'); break;
      case '\\': out.push_back('\\'); break;
      case 'n': out.push_back('\n'); break;
      case 't': out.push_back('\t'); break;
      case 'r': out.push_back('\r'); break;
      case 'b': out.push_back('\b'); break;
      case 'f': out.push_back('\f'); break;
      default: fail(line, std::string("unsupported escape '\\") + body[i] + "'");
    }
  }
  return out;
}

Value parse_value(const std::string& text, int line);

Value parse_array(const std::string& text, int line) {
  Value out;
  out.type = Value::Type::array;
  const std::string inner = text.substr(1, text.size() - 2);
  std::string element;
  int depth = 0;
  char quote = 0;
  auto flush = [&](bool last) {
    const std::string trimmed = trim(element);
    element.clear();
    if (trimmed.empty()) {
      // Empty tail = trailing comma (or empty array); empty middle is an error.
      if (!last) fail(line, "empty array element");
      return;
    }
    out.items.push_back(parse_value(trimmed, line));
  };
  for (std::size_t i = 0; i < inner.size(); ++i) {
    const char c = inner[i];
    if (quote != 0) {
      element.push_back(c);
      if (c == '\\' && quote == '"' && i + 1 < inner.size()) {
        element.push_back(inner[++i]);
      } else if (c == quote) {
        quote = 0;
      }
      continue;
    }
    if (c == '"' || c == '\'') {
      quote = c;
      element.push_back(c);
    } else if (c == '[') {
      ++depth;
      element.push_back(c);
    } else if (c == ']') {
      --depth;
      element.push_back(c);
    } else if (c == ',' && depth == 0) {
      flush(false);
    } else {
      element.push_back(c);
    }
  }
  flush(true);
  return out;
}

Value parse_value(const std::string& text, int line) {
  Value out;
  if (text.empty()) fail(line, "missing value");
  const char head = text.front();
  if (head == '"' || head == '\'') {
    if (text.size() < 2 || text.back() != head) {
      fail(line, "unterminated string value");
    }
    const std::string body = text.substr(1, text.size() - 2);
    // An unescaped quote inside the body means the string closed early and
    // the statement carries trailing junk ("a" b").
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i] == '\\' && head == '"') {
        ++i;
      } else if (body[i] == head) {
        fail(line, "trailing characters after string");
      }
    }
    out.type = Value::Type::string;
    out.str = head == '"' ? unescape_basic(body, line) : body;
    return out;
  }
  if (head == '[') {
    if (text.back() != ']') fail(line, "unterminated array");
    return parse_array(text, line);
  }
  if (head == '{') fail(line, "inline tables are not supported");
  if (text == "true" || text == "false") {
    out.type = Value::Type::boolean;
    out.boolean = text == "true";
    return out;
  }

  std::string digits;
  digits.reserve(text.size());
  for (char c : text) {
    if (c != '_') digits.push_back(c);
  }
  std::string_view sv = digits;
  if (!sv.empty() && sv.front() == '+') sv.remove_prefix(1);

  std::int64_t int_value = 0;
  auto ir = std::from_chars(sv.data(), sv.data() + sv.size(), int_value);
  if (ir.ec == std::errc() && ir.ptr == sv.data() + sv.size()) {
    out.type = Value::Type::integer;
    out.integer = int_value;
    return out;
  }
  double dbl_value = 0.0;
  auto dr = std::from_chars(sv.data(), sv.data() + sv.size(), dbl_value);
  if (dr.ec == std::errc() && dr.ptr == sv.data() + sv.size()) {
    out.type = Value::Type::floating;
    out.floating = dbl_value;
    return out;
  }
  fail(line, "cannot parse value '" + text + "'");
}

std::string type_name(Value::Type type) {
  switch (type) {
    case Value::Type::string: return "string";
    case Value::Type::integer: return "integer";
    case Value::Type::floating: return "float";
    case Value::Type::boolean: return "bool";
    case Value::Type::array: return "array";
  }
  return "?";
}

[[noreturn]] void type_fail(const std::string& key, const std::string& expected,
                            Value::Type got) {
  throw ConfigError("config key '" + key + "': expected " + expected + ", got " +
                    type_name(got));
}

}  // namespace

const Value* Document::find(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) return nullptr;
  used_.insert(key);
  return &it->second;
}

std::string Document::require_string(const std::string& key) const {
  const Value* v = find(key);
  if (v == nullptr) throw ConfigError("config key '" + key + "' is required");
  if (v->type != Value::Type::string) type_fail(key, "string", v->type);
  return v->str;
}

std::string Document::get_string(const std::string& key,
                                 const std::string& fallback) const {
  const Value* v = find(key);
  if (v == nullptr) return fallback;
  if (v->type != Value::Type::string) type_fail(key, "string", v->type);
  return v->str;
}

std::int64_t Document::get_int(const std::string& key, std::int64_t fallback) const {
  const Value* v = find(key);
  if (v == nullptr) return fallback;
  if (v->type != Value::Type::integer) type_fail(key, "integer", v->type);
  return v->integer;
}

double Document::get_double(const std::string& key, double fallback) const {
  const Value* v = find(key);
  if (v == nullptr) return fallback;
  if (v->type == Value::Type::integer) return static_cast<double>(v->integer);
  if (v->type != Value::Type::floating) type_fail(key, "float", v->type);
  return v->floating;
}

bool Document::get_bool(const std::string& key, bool fallback) const {
  const Value* v = find(key);
  if (v == nullptr) return fallback;
  if (v->type != Value::Type::boolean) type_fail(key, "bool", v->type);
  return v->boolean;
}

std::vector<double> Document::require_double_array(const std::string& key) const {
  const Value* v = find(key);
  if (v == nullptr) throw ConfigError("config key '" + key + "' is required");
  if (v->type != Value::Type::array) type_fail(key, "array of numbers", v->type);
  std::vector<double> out;
  out.reserve(v->items.size());
  for (const Value& item : v->items) {
    if (item.type == Value::Type::integer) {
      out.push_back(static_cast<double>(item.integer));
    } else if (item.type == Value::Type::floating) {
      out.push_back(item.floating);
    } else {
      type_fail(key, "array of numbers", item.type);
    }
  }
  return out;
}

std::vector<std::string> Document::get_string_array(const std::string& key) const {
  const Value* v = find(key);
  if (v == nullptr) return {};
  if (v->type != Value::Type::array) type_fail(key, "array of strings", v->type);
  std::vector<std::string> out;
  out.reserve(v->items.size());
  for (const Value& item : v->items) {
    if (item.type != Value::Type::string) type_fail(key, "array of strings", item.type);
    out.push_back(item.str);
  }
  return out;
}

std::vector<std::string> Document::keys_with_prefix(const std::string& prefix) const {
  std::vector<std::string> out;
  for (const auto& [key, value] : values) {
    if (key == prefix ||
        (key.size() > prefix.size() + 1 && key.compare(0, prefix.size(), prefix) == 0 &&
         key[prefix.size()] == '.')) {
      out.push_back(key);
    }
  }
  return out;
}

std::vector<std::string> Document::unused_keys() const {
  std::vector<std::string> out;
  for (const auto& [key, value] : values) {
    if (used_.count(key) == 0) out.push_back(key);
  }
  return out;
}

Document parse(const std::string& text) {
  Document doc;
  std::string prefix;
  for (const Statement& stmt : split_statements(text)) {
    const std::string& s = stmt.text;
    if (s.rfind("[[", 0) == 0) fail(stmt.line, "arrays of tables are not supported");
    if (s.front() == '[') {
      if (s.back() != ']') fail(stmt.line, "malformed table header");
      const std::string inside = trim(s.substr(1, s.size() - 2));
      validate_key_path(inside, stmt.line);
      prefix = inside;
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) fail(stmt.line, "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    validate_key_path(key, stmt.line);
    const std::string full = prefix.empty() ? key : prefix + "." + key;
    if (doc.values.count(full) != 0) fail(stmt.line, "duplicate key '" + full + "'");
    doc.values.emplace(full, parse_value(trim(s.substr(eq + 1)), stmt.line));
  }
  return doc;
}

Document parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

}  // namespace pasa::toml
