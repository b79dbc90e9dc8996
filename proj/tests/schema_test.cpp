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

#include <gtest/gtest.h>

#include "eqfuzz/errors.hpp"
#include "eqfuzz/schema.hpp"

namespace eqfuzz {
namespace {

InputSchema list_and_len() {
  return parse_schema(std::string_view(R"({"params": [
      {"name": "a", "kind": "list", "length": [0, 10], "element": {"name": "v", "kind": "int", "bounds": [0, 9]}},
      {"name": "n", "kind": "int", "bounds": [0, 10]}],
    "relations": ["len(a) == n"]})"));
}

TEST(ParseSchema, MinimalIntSchema) {
  InputSchema s = parse_schema(std::string_view(R"({"params": [{"name": "n", "kind": "int", "bounds": [0, 100]}], "relations": []})"));
  ASSERT_EQ(s.params.size(), 1u);
  EXPECT_EQ(s.params[0].int_range(), (std::pair<std::int64_t, std::int64_t>{0, 100}));
  EXPECT_EQ(s.mode, InputMode::kArgumentVector);
  EXPECT_EQ(s.index_of("n"), 0u);
  EXPECT_FALSE(s.index_of("m"));
}

TEST(ParseSchema, ListWithLengthRelation) {
  InputSchema s = list_and_len();
  ASSERT_EQ(s.relations.size(), 1u);
  EXPECT_EQ(s.relations[0].referenced(), (std::vector<std::string>{"a", "n"}));
}

TEST(ParseSchema, DefaultsApplyWhenBoundsOmitted) {
  InputSchema s = parse_schema(std::string_view(R"({"params": [{"name": "x", "kind": "int"}, {"name": "s", "kind": "string"}]})"));
  EXPECT_EQ(s.params[0].int_range(), (std::pair<std::int64_t, std::int64_t>{kDefaultIntLo, kDefaultIntHi}));
  EXPECT_EQ(s.params[1].length_range(), (std::pair<std::size_t, std::size_t>{kDefaultMinLen, kDefaultMaxLen}));
  EXPECT_EQ(s.params[1].alphabet().size(), 95u);  // printable ASCII
}

TEST(ParseSchema, RejectsBadSchemas) {
  const char* bad[] = {
      R"({"params": [{"name": "n", "kind": "complex"}]})",
      R"({"params": [{"name": "n", "kind": "int"}], "relations": ["n < m"]})",
      R"({"params": [{"name": "n", "kind": "int"}], "relations": ["n <"]})",
      R"({"params": [{"name": "n", "kind": "int", "bounds": [5, 1]}]})",
      R"({"params": [{"name": "n", "kind": "int"}, {"name": "n", "kind": "int"}]})",
      R"({"params": [{"name": "n", "kind": "int", "colour": 1}]})",
      R"({"params": [{"name": "a", "kind": "list"}]})",
      R"({"params": [{"name": "x", "kind": "float"}], "relations": ["x % 2 == 0"]})",
      R"({"params": [{"name": "n", "kind": "int"}], "relations": ["n"]})",
      R"({"params": [], "extra": 1})",
  };
  for (const char* text : bad) EXPECT_THROW(parse_schema(std::string_view(text)), SchemaError) << text;
}

TEST(ParseSchema, RoundTripsThroughValue) {
  InputSchema s = list_and_len();
  Value v = schema_to_value(s);
  EXPECT_TRUE(schema_to_value(parse_schema(v)) == v);
}

TEST(Satisfies, BoundsAreClosed) {
  InputSchema s = parse_schema(std::string_view(R"({"params": [{"name": "n", "kind": "int", "bounds": [0, 100]}]})"));
  EXPECT_TRUE(satisfies(s, std::vector<Value>{Value(42)}));
  EXPECT_TRUE(satisfies(s, std::vector<Value>{Value(0)}));
  EXPECT_TRUE(satisfies(s, std::vector<Value>{Value(100)}));
  EXPECT_FALSE(satisfies(s, std::vector<Value>{Value(101)}));
  EXPECT_FALSE(satisfies(s, std::vector<Value>{Value(42.0)}));  // kind mismatch
  EXPECT_THROW(satisfies(s, std::vector<Value>{}), InvalidArgument);
}

TEST(Satisfies, LengthRelation) {
  InputSchema s = list_and_len();
  EXPECT_TRUE(satisfies(s, std::vector<Value>{Value::list({1, 2, 3}), Value(3)}));
  EXPECT_FALSE(satisfies(s, std::vector<Value>{Value::list({1, 2}), Value(3)}));
  EXPECT_FALSE(satisfies(s, std::vector<Value>{Value::list({1, 20}), Value(2)}));  // element bound
}

TEST(Satisfies, CharsetAndFloats) {
  InputSchema s = parse_schema(std::string_view(R"({"params": [
      {"name": "s", "kind": "string", "length": [1, 3], "charset": "ab"},
      {"name": "x", "kind": "float", "bounds": [0.0, 1.0]}]})"));
  EXPECT_TRUE(satisfies(s, std::vector<Value>{Value("ab"), Value(1.0)}));
  EXPECT_FALSE(satisfies(s, std::vector<Value>{Value("abc!"), Value(0.5)}));
  EXPECT_FALSE(satisfies(s, std::vector<Value>{Value("c"), Value(0.5)}));
  EXPECT_FALSE(satisfies(s, std::vector<Value>{Value(""), Value(0.5)}));
  EXPECT_FALSE(satisfies(s, std::vector<Value>{Value("a"), Value(1.0000000001)}));
}

TEST(RelationExpr, ArithmeticFollowsPythonSemantics) {
  std::vector<ParamSpec> params(2);
  params[0].name = "x";
  params[1].name = "y";
  auto holds = [&](const char* text, std::int64_t x, std::int64_t y) {
    return RelationExpr::parse(text, params).evaluate(std::vector<Value>{Value(x), Value(y)});
  };
  EXPECT_TRUE(holds("x % 3 == 2", -7, 0));       // floor modulo
  EXPECT_TRUE(holds("x / y == 2.5", 5, 2));      // real division
  EXPECT_FALSE(holds("x / y > 0", 1, 0));        // division by zero: unsatisfied
  EXPECT_TRUE(holds("x < y and y <= 2 * x", 3, 6));
  EXPECT_FALSE(holds("x < y && y <= 2 * x", 3, 7));
  EXPECT_TRUE(holds("-(x - y) == y - x", 4, 9));
  EXPECT_TRUE(holds("x mod 4 != 0", 5, 0));
  EXPECT_TRUE(holds("x * x > 0", 4000000000, 0));  // past 32 bits
}

TEST(Charset, NamedAndLiteral) {
  EXPECT_EQ(resolve_charset("digit").size(), 10u);
  EXPECT_EQ(resolve_charset("lower").front(), "a");
  EXPECT_EQ(resolve_charset("xyx"), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(resolve_charset("\xc3\xa9" "a"), (std::vector<std::string>{"\xc3\xa9", "a"}));
}

}  // namespace
}  // namespace eqfuzz
