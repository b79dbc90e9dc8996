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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "eqfuzz/errors.hpp"
#include "eqfuzz/value.hpp"
#include "random_values.hpp"

namespace eqfuzz {
namespace {

TEST(ValueText, ScalarsRenderCanonically) {
  EXPECT_EQ(to_text(Value()), "null");
  EXPECT_EQ(to_text(Value(true)), "true");
  EXPECT_EQ(to_text(Value(-42)), "-42");
  EXPECT_EQ(to_text(Value(3.0)), "3.0");
  EXPECT_EQ(to_text(Value(0.1)), "0.1");
  EXPECT_EQ(to_text(Value(1e300)), "1e+300");
  EXPECT_EQ(to_text(Value(std::nan(""))), "NaN");
  EXPECT_EQ(to_text(Value(-std::numeric_limits<double>::infinity())), "-Infinity");
  EXPECT_EQ(to_text(Value("a\"b\n")), "\"a\\\"b\\n\"");
}

TEST(ValueText, IntAndFloatStayDistinct) {
  EXPECT_FALSE(Value(3) == Value(3.0));
  EXPECT_TRUE(parse_value("3").is_int());
  EXPECT_TRUE(parse_value("3.0").is_float());
  EXPECT_TRUE(parse_value("3e0").is_float());
}

TEST(ValueText, BigIntegersSurvive) {
  Value v = parse_value("123456789012345678901234567890");
  ASSERT_TRUE(v.is_int());
  EXPECT_EQ(v.as_int(), BigInt("123456789012345678901234567890"));
  EXPECT_EQ(to_text(v), "123456789012345678901234567890");
  EXPECT_FALSE(v.to_int64());
}

TEST(ValueText, MapKeysAreSorted) {
  Value v = parse_value(R"({"b": 1, "a": [true, null]})");
  EXPECT_EQ(to_text(v), R"({"a":[true,null],"b":1})");
  EXPECT_THROW(parse_value(R"({"a": 1, "a": 2})"), ParseError);
  EXPECT_THROW(Value::map({{"k", 1}, {"k", 2}}), InvalidArgument);
}

TEST(ValueText, MalformedInputIsRejected) {
  for (const char* bad : {"", "[1,", "{\"a\"}", "tru", "01", "1.", "\"unterminated", "[1] x", "nan"}) {
    EXPECT_THROW(parse_value(bad), ParseError) << bad;
  }
}

TEST(ValueText, UnicodeEscapesDecodeToUtf8) {
  EXPECT_EQ(parse_value(R"("\u00e9\ud83d\ude00")").as_string(), "\xc3\xa9\xf0\x9f\x98\x80");
}

TEST(ValueText, RoundTripProperty) {
  testing::ValueGen gen(7);
  for (int i = 0; i < 20000; ++i) {
    Value v = gen();
    std::string text = to_text(v);
    Value back = parse_value(text);
    ASSERT_TRUE(back == v) << text;
    ASSERT_EQ(to_text(back), text);
    ASSERT_TRUE(parse_value(to_pretty_text(v)) == v) << text;
  }
}

TEST(ValueAccess, WrongKindThrows) {
  EXPECT_THROW(Value(1).as_string(), InvalidArgument);
  EXPECT_THROW(Value("x").as_list(), InvalidArgument);
  EXPECT_EQ(Value::list({1, 2}).as_list().size(), 2u);
  Value m = Value::map({{"x", 1}});
  ASSERT_NE(m.find("x"), nullptr);
  EXPECT_EQ(m.find("y"), nullptr);
}

}  // namespace
}  // namespace eqfuzz
