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

// CanonicalValue: the value universe shared by corpus literals, generated
// inputs, adapter responses and comparison.
//
// Text syntax is JSON with three extensions for binary64 specials (`NaN`,
// `Infinity`, `-Infinity`). Integers are arbitrary precision. A number
// lexeme is a float iff it contains '.', 'e' or 'E'; floats are always
// rendered so that they stay floats (`3.0`, never `3`), using the
// shortest representation that round-trips. Mapping keys are unique and
// rendered in ascending byte order.

#ifndef EQFUZZ_VALUE_HPP_
#define EQFUZZ_VALUE_HPP_

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace eqfuzz {

using BigInt = boost::multiprecision::cpp_int;

class Value;
using List = std::vector<Value>;
// Sorted by key, keys unique. Use Value::map() to build one from unsorted
// entries.
using Entries = std::vector<std::pair<std::string, Value>>;

class Value {
 public:
  enum class Kind { kNull, kBool, kInt, kFloat, kString, kList, kMap };

  struct Null {
    bool operator==(const Null&) const = default;
  };
  struct Map {
    Entries entries;
  };

  Value() : data_(Null{}) {}
  Value(std::nullptr_t) : data_(Null{}) {}
  Value(bool b) : data_(b) {}
  Value(int v) : data_(BigInt(v)) {}
  Value(std::int64_t v) : data_(BigInt(v)) {}
  Value(BigInt v) : data_(std::move(v)) {}
  // NaN payloads collapse to a single canonical NaN.
  Value(double v);
  Value(const char* s) : data_(std::string(s)) {}
  Value(std::string s) : data_(std::move(s)) {}
  Value(List items) : data_(std::move(items)) {}

  static Value list(std::initializer_list<Value> items) { return Value(List(items)); }
  // Sorts entries by key; throws InvalidArgument on duplicate keys.
  static Value map(Entries entries);

  Kind kind() const { return static_cast<Kind>(data_.index()); }
  bool is_null() const { return kind() == Kind::kNull; }
  bool is_bool() const { return kind() == Kind::kBool; }
  bool is_int() const { return kind() == Kind::kInt; }
  bool is_float() const { return kind() == Kind::kFloat; }
  bool is_string() const { return kind() == Kind::kString; }
  bool is_list() const { return kind() == Kind::kList; }
  bool is_map() const { return kind() == Kind::kMap; }

  // Accessors throw InvalidArgument on a kind mismatch.
  bool as_bool() const;
  const BigInt& as_int() const;
  double as_float() const;
  const std::string& as_string() const;
  const List& as_list() const;
  const Entries& as_map() const;

  // Integer narrowing; nullopt when not an int or out of range.
  std::optional<std::int64_t> to_int64() const;

  // Map lookup; nullptr when absent or not a map.
  const Value* find(std::string_view key) const;

  // Exact structural equality (no float tolerance; NaN equals NaN, 3 != 3.0).
  friend bool operator==(const Value& a, const Value& b);

 private:
  std::variant<Null, bool, BigInt, double, std::string, List, Map> data_;
};

std::string_view kind_name(Value::Kind kind);

// Canonical compact text. Deterministic for equal values.
std::string to_text(const Value& value);

// Same content as to_text, one element per line with two-space indent.
std::string to_pretty_text(const Value& value);

// Parses exactly one value; trailing non-whitespace is an error.
Value parse_value(std::string_view text);

}  // namespace eqfuzz

#endif  // EQFUZZ_VALUE_HPP_
