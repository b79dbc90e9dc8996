// Copyright 2026 The eqfuzz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eqfuzz/value.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <system_error>

#include "eqfuzz/errors.hpp"

namespace eqfuzz {

Value::Value(double v) : data_(std::isnan(v) ? std::numeric_limits<double>::quiet_NaN() : v) {}

Value Value::map(Entries entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i - 1].first == entries[i].first) {
      throw InvalidArgument("duplicate mapping key \"" + entries[i].first + "\"");
    }
  }
  Value out;
  out.data_ = Map{std::move(entries)};
  return out;
}

namespace {

[[noreturn]] void kind_mismatch(Value::Kind want, Value::Kind got) {
  throw InvalidArgument("expected " + std::string(kind_name(want)) + ", got " +
                        std::string(kind_name(got)));
}

}  // namespace

bool Value::as_bool() const {
  if (!is_bool()) kind_mismatch(Kind::kBool, kind());
  return std::get<bool>(data_);
}

const BigInt& Value::as_int() const {
  if (!is_int()) kind_mismatch(Kind::kInt, kind());
  return std::get<BigInt>(data_);
}

double Value::as_float() const {
  if (!is_float()) kind_mismatch(Kind::kFloat, kind());
  return std::get<double>(data_);
}

const std::string& Value::as_string() const {
  if (!is_string()) kind_mismatch(Kind::kString, kind());
  return std::get<std::string>(data_);
}

const List& Value::as_list() const {
  if (!is_list()) kind_mismatch(Kind::kList, kind());
  return std::get<List>(data_);
}

const Entries& Value::as_map() const {
  if (!is_map()) kind_mismatch(Kind::kMap, kind());
  return std::get<Map>(data_).entries;
}

std::optional<std::int64_t> Value::to_int64() const {
  if (!is_int()) return std::nullopt;
  const BigInt& v = std::get<BigInt>(data_);
  if (v < std::numeric_limits<std::int64_t>::min() ||
      v > std::numeric_limits<std::int64_t>::max()) {
    return std::nullopt;
  }
  return v.convert_to<std::int64_t>();
}

const Value* Value::find(std::string_view key) const {
  if (!is_map()) return nullptr;
  const Entries& entries = std::get<Map>(data_).entries;
  auto it = std::lower_bound(entries.begin(), entries.end(), key,
                             [](const auto& e, std::string_view k) { return e.first < k; });
  if (it == entries.end() || it->first != key) return nullptr;
  return &it->second;
}

bool operator==(const Value& a, const Value& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Value::Kind::kNull:
      return true;
    case Value::Kind::kBool:
      return a.as_bool() == b.as_bool();
    case Value::Kind::kInt:
      return a.as_int() == b.as_int();
    case Value::Kind::kFloat: {
      double x = a.as_float(), y = b.as_float();
      return (std::isnan(x) && std::isnan(y)) || x == y;
    }
    case Value::Kind::kString:
      return a.as_string() == b.as_string();
    case Value::Kind::kList:
      return a.as_list() == b.as_list();
    case Value::Kind::kMap:
      return a.as_map() == b.as_map();
  }
  return false;
}

std::string_view kind_name(Value::Kind kind) {
  switch (kind) {
    case Value::Kind::kNull: return "null";
    case Value::Kind::kBool: return "bool";
    case Value::Kind::kInt: return "int";
    case Value::Kind::kFloat: return "float";
    case Value::Kind::kString: return "string";
    case Value::Kind::kList: return "list";
    case Value::Kind::kMap: return "map";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

void append_float(std::string& out, double v) {
  if (std::isnan(v)) {
    out += "NaN";
    return;
  }
  if (std::isinf(v)) {
    out += v > 0 ? "Infinity" : "-Infinity";
    return;
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  std::string_view text(buf, static_cast<std::size_t>(res.ptr - buf));
  out += text;
  if (text.find_first_of(".eE") == std::string_view::npos) out += ".0";
}

void append_string(std::string& out, std::string_view s) {
  static constexpr char kHex[] = "0123456789abcdef";
  out += '"';
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (u < 0x20 || u == 0x7f) {
          out += "\\u00";
          out += kHex[u >> 4];
          out += kHex[u & 0xf];
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void append_value(std::string& out, const Value& v) {
  switch (v.kind()) {
    case Value::Kind::kNull: out += "null"; break;
    case Value::Kind::kBool: out += v.as_bool() ? "true" : "false"; break;
    case Value::Kind::kInt: out += v.as_int().str(); break;
    case Value::Kind::kFloat: append_float(out, v.as_float()); break;
    case Value::Kind::kString: append_string(out, v.as_string()); break;
    case Value::Kind::kList: {
      out += '[';
      bool first = true;
      for (const Value& item : v.as_list()) {
        if (!first) out += ',';
        first = false;
        append_value(out, item);
      }
      out += ']';
      break;
    }
    case Value::Kind::kMap: {
      out += '{';
      bool first = true;
      for (const auto& [key, item] : v.as_map()) {
        if (!first) out += ',';
        first = false;
        append_string(out, key);
        out += ':';
        append_value(out, item);
      }
      out += '}';
      break;
    }
  }
}

// ---------------------------------------------------------------------------
// Parsing

constexpr int kMaxDepth = 512;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Value parse_document() {
    Value v = parse(0);
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool consume_literal(std::string_view lit) {
    if (text_.substr(pos_, lit.size()) == lit) {
      pos_ += lit.size();
      return true;
    }
    return false;
  }

  Value parse(int depth) {
    if (depth > kMaxDepth) fail("nesting too deep");
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    switch (c) {
      case '{': return parse_map(depth);
      case '[': return parse_list(depth);
      case '"': return Value(parse_string());
      case 't':
        if (consume_literal("true")) return Value(true);
        break;
      case 'f':
        if (consume_literal("false")) return Value(false);
        break;
      case 'n':
        if (consume_literal("null")) return Value();
        break;
      case 'N':
        if (consume_literal("NaN")) return Value(std::numeric_limits<double>::quiet_NaN());
        break;
      case 'I':
        if (consume_literal("Infinity")) return Value(std::numeric_limits<double>::infinity());
        break;
      default:
        if (c == '-' || (c >= '0' && c <= '9')) return parse_number();
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  Value parse_number() {
    std::size_t start = pos_;
    if (text_[pos_] == '-') {
      ++pos_;
      if (consume_literal("Infinity")) return Value(-std::numeric_limits<double>::infinity());
    }
    auto digits = [&] {
      std::size_t s = pos_;
      while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
      return pos_ - s;
    };
    std::size_t int_start = pos_;
    std::size_t n_int = digits();
    if (n_int == 0) fail("malformed number");
    if (n_int > 1 && text_[int_start] == '0') fail("leading zero in number");
    bool is_float = false;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      is_float = true;
      ++pos_;
      if (digits() == 0) fail("malformed fraction");
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      is_float = true;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail("malformed exponent");
    }
    std::string_view lexeme = text_.substr(start, pos_ - start);
    if (is_float) {
      double d = 0;
      auto res = std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(), d);
      if (res.ec == std::errc::result_out_of_range) {
        // Overflow saturates like Python's float(); underflow goes to zero.
        d = std::strtod(std::string(lexeme).c_str(), nullptr);
      } else if (res.ec != std::errc()) {
        fail("malformed float");
      }
      return Value(d);
    }
    std::int64_t small = 0;
    auto res = std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(), small);
    if (res.ec == std::errc() && res.ptr == lexeme.data() + lexeme.size()) {
      return Value(small);
    }
    return Value(BigInt(std::string(lexeme)));
  }

  unsigned parse_hex4() {
    if (pos_ + 4 > text_.size()) fail("truncated \\u escape");
    unsigned cp = 0;
    for (int i = 0; i < 4; ++i) {
      char h = text_[pos_++];
      cp <<= 4;
      if (h >= '0' && h <= '9') cp |= static_cast<unsigned>(h - '0');
      else if (h >= 'a' && h <= 'f') cp |= static_cast<unsigned>(h - 'a' + 10);
      else if (h >= 'A' && h <= 'F') cp |= static_cast<unsigned>(h - 'A' + 10);
      else fail("bad hex digit in \\u escape");
    }
    return cp;
  }

  static void append_utf8(std::string& out, unsigned cp) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }

  std::string parse_string() {
    ++pos_;  // opening quote
    std::string out;
    while (true) {
      if (pos_ >= text_.size()) fail("unterminated string");
      char c = text_[pos_++];
      if (c == '"') return out;
      if (static_cast<unsigned char>(c) < 0x20) fail("control character in string");
      if (c != '\\') {
        out += c;
        continue;
      }
      if (pos_ >= text_.size()) fail("unterminated escape");
      char e = text_[pos_++];
      switch (e) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case '/': out += '/'; break;
        case 'b': out += '\b'; break;
        case 'f': out += '\f'; break;
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case 't': out += '\t'; break;
        case 'u': {
          unsigned cp = parse_hex4();
          if (cp >= 0xD800 && cp <= 0xDBFF) {
            if (!consume_literal("\\u")) fail("unpaired surrogate");
            unsigned lo = parse_hex4();
            if (lo < 0xDC00 || lo > 0xDFFF) fail("unpaired surrogate");
            cp = 0x10000 + ((cp - 0xD800) << 10) + (lo - 0xDC00);
          } else if (cp >= 0xDC00 && cp <= 0xDFFF) {
            fail("unpaired surrogate");
          }
          append_utf8(out, cp);
          break;
        }
        default:
          fail("unknown escape");
      }
    }
  }

  Value parse_list(int depth) {
    ++pos_;
    List items;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ']') {
      ++pos_;
      return Value(std::move(items));
    }
    while (true) {
      items.push_back(parse(depth + 1));
      skip_ws();
      if (pos_ >= text_.size()) fail("unterminated list");
      char c = text_[pos_++];
      if (c == ']') return Value(std::move(items));
      if (c != ',') fail("expected ',' or ']'");
    }
  }

  Value parse_map(int depth) {
    ++pos_;
    Entries entries;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '}') {
      ++pos_;
      return Value::map(std::move(entries));
    }
    while (true) {
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != '"') fail("expected string key");
      std::string key = parse_string();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ':') fail("expected ':'");
      ++pos_;
      entries.emplace_back(std::move(key), parse(depth + 1));
      skip_ws();
      if (pos_ >= text_.size()) fail("unterminated mapping");
      char c = text_[pos_++];
      if (c == '}') break;
      if (c != ',') fail("expected ',' or '}'");
    }
    try {
      return Value::map(std::move(entries));
    } catch (const InvalidArgument& e) {
      fail(e.what());
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_text(const Value& value) {
  std::string out;
  append_value(out, value);
  return out;
}

namespace {

void append_pretty(std::string& out, const Value& v, int depth) {
  auto newline = [&](int d) {
    out += '\n';
    out.append(static_cast<std::size_t>(2 * d), ' ');
  };
  if (v.is_list() && !v.as_list().empty()) {
    out += '[';
    bool first = true;
    for (const Value& item : v.as_list()) {
      if (!first) out += ',';
      first = false;
      newline(depth + 1);
      append_pretty(out, item, depth + 1);
    }
    newline(depth);
    out += ']';
  } else if (v.is_map() && !v.as_map().empty()) {
    out += '{';
    bool first = true;
    for (const auto& [key, item] : v.as_map()) {
      if (!first) out += ',';
      first = false;
      newline(depth + 1);
      append_string(out, key);
      out += ": ";
      append_pretty(out, item, depth + 1);
    }
    newline(depth);
    out += '}';
  } else {
    append_value(out, v);
  }
}

}  // namespace

std::string to_pretty_text(const Value& value) {
  std::string out;
  append_pretty(out, value, 0);
  return out;
}

Value parse_value(std::string_view text) { return Parser(text).parse_document(); }

}  // namespace eqfuzz
