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

// Constraint model for generated inputs: per-parameter kinds, ranges,
// lengths and alphabets, plus conjunctive relational conditions among
// parameters.
//
// Concrete syntax (a mapping, usually embedded under a corpus record's
// "schema" key):
//
//   {"mode": "argument_vector" | "text_stream",          (optional)
//    "params": [{"name": "a", "kind": "list", "length": [0, 10],
//                "element": {"kind": "int", "bounds": [0, 9]}},
//               {"name": "n", "kind": "int", "bounds": [0, 10]}],
//    "relations": ["len(a) == n"]}
//
// Relation grammar:
//
//   relation   := comparison (("and" | "&&") comparison)*
//   comparison := sum ("<" | "<=" | "==" | "=" | "!=" | ">=" | ">") sum
//   sum        := product (("+" | "-") product)*
//   product    := unary (("*" | "/" | "%" | "mod") unary)*
//   unary      := "-" unary | atom
//   atom       := number | name | "len(" name ")" | "(" sum ")"
//
// "/" is real division; "%" is integer-only with the sign of the divisor.
// A relation whose evaluation divides by zero is unsatisfied.

#ifndef EQFUZZ_SCHEMA_HPP_
#define EQFUZZ_SCHEMA_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eqfuzz/value.hpp"

namespace eqfuzz {

enum class ParamKind { kInt, kFloat, kBool, kString, kList, kTuple };
enum class InputMode { kArgumentVector, kTextStream };

std::string_view to_string(ParamKind kind);
std::string_view to_string(InputMode mode);

// Bounds used when a spec omits them.
inline constexpr std::int64_t kDefaultIntLo = -1000;
inline constexpr std::int64_t kDefaultIntHi = 1000;
inline constexpr double kDefaultFloatLo = -1000.0;
inline constexpr double kDefaultFloatHi = 1000.0;
inline constexpr std::size_t kDefaultMinLen = 0;
inline constexpr std::size_t kDefaultMaxLen = 10;

struct ParamSpec {
  std::string name;
  ParamKind kind = ParamKind::kInt;
  std::optional<std::pair<std::int64_t, std::int64_t>> int_bounds;
  std::optional<std::pair<double, double>> float_bounds;
  std::optional<std::pair<std::size_t, std::size_t>> length_bounds;
  // Alphabet as UTF-8 code points, deduplicated, declaration order.
  std::optional<std::vector<std::string>> charset;
  // Present iff kind is list or tuple.
  std::shared_ptr<const ParamSpec> element;

  std::pair<std::int64_t, std::int64_t> int_range() const;
  std::pair<double, double> float_range() const;
  std::pair<std::size_t, std::size_t> length_range() const;
  const std::vector<std::string>& alphabet() const;
};

// Resolves a charset spelling: one of the named classes (lower, upper,
// alpha, digit, alnum, printable) or else the literal characters given.
std::vector<std::string> resolve_charset(std::string_view spelling);

class RelationExpr {
 public:
  // Parses and type-checks against the declared parameters.
  static RelationExpr parse(std::string_view text, std::span<const ParamSpec> params);

  // `values` are positional, aligned with the params passed to parse().
  // Assumes each value already matches its spec.
  bool evaluate(std::span<const Value> values) const;

  const std::string& text() const { return text_; }
  const std::vector<std::string>& referenced() const { return referenced_; }

  struct Node;

 private:
  std::string text_;
  std::vector<std::string> referenced_;
  std::shared_ptr<const Node> root_;
};

struct InputSchema {
  std::vector<ParamSpec> params;
  std::vector<RelationExpr> relations;
  InputMode mode = InputMode::kArgumentVector;

  std::optional<std::size_t> index_of(std::string_view name) const;
};

// Throws SchemaError on unknown kinds or keys, violated bounds, duplicate
// names, unresolved names and malformed relations.
InputSchema parse_schema(const Value& object);
InputSchema parse_schema(std::string_view text);

// Inverse of parse_schema (up to defaults and key order).
Value schema_to_value(const InputSchema& schema);

// Does `value` match the spec's kind, bounds, lengths and alphabet?
bool value_matches(const ParamSpec& spec, const Value& value);

// Throws InvalidArgument when candidate.size() != schema.params.size().
bool satisfies(const InputSchema& schema, std::span<const Value> candidate);

}  // namespace eqfuzz

#endif  // EQFUZZ_SCHEMA_HPP_
