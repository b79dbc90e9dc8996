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
#include "eqfuzz/exec.hpp"

namespace eqfuzz {
namespace {

TestInput input_of(std::vector<Value> values, std::size_t index = 0) {
  TestInput in;
  in.index = index;
  in.values = std::move(values);
  return in;
}

ExecTarget fn_target(std::string source) {
  ExecTarget t;
  t.source = std::move(source);
  t.entry_point = "f";
  return t;
}

TEST(ExecutionOutcome, PayloadShapes) {
  auto v = ExecutionOutcome::value(7);
  EXPECT_TRUE(v.is_value());
  EXPECT_TRUE(v.payload() == Value(7));
  auto e = ExecutionOutcome::error("ZeroDivisionError", "division by zero");
  EXPECT_EQ(e.error_class(), "ZeroDivisionError");
  EXPECT_EQ(e.message(), "division by zero");
  EXPECT_THROW(e.payload(), InvalidArgument);
  EXPECT_THROW(v.error_class(), InvalidArgument);
  EXPECT_EQ(ExecutionOutcome::timeout(std::chrono::seconds(5)).tag(), OutcomeTag::kTimeout);
  EXPECT_EQ(ExecutionOutcome::non_executable("bad").message(), "bad");
}

TEST(ExecutionOutcome, ToValueLeavesOutWallTime) {
  auto a = ExecutionOutcome::value(Value::list({1}), std::chrono::milliseconds(3));
  auto b = ExecutionOutcome::value(Value::list({1}), std::chrono::milliseconds(9));
  EXPECT_TRUE(a.to_value() == b.to_value());
  EXPECT_EQ(to_text(ExecutionOutcome::error("E", "m").to_value()), R"({"error_class":"E","message":"m","tag":"error"})");
}

TEST(FakeExecutor, RunsRegisteredBehaviors) {
  FakeExecutor fake;
  fake.add("identity", [](const TestInput& in, const ExecPolicy&) { return ExecutionOutcome::value(in.values[0]); });
  fake.add("inverse", [](const TestInput& in, const ExecPolicy&) {
    std::int64_t x = *in.values[0].to_int64();
    if (x == 0) return ExecutionOutcome::error("ZeroDivisionError", "division by zero");
    return ExecutionOutcome::value(1.0 / static_cast<double>(x));
  });
  ExecPolicy policy;
  EXPECT_TRUE(fake.run_once(fn_target("identity"), input_of({Value(7)}), policy).payload() == Value(7));
  EXPECT_EQ(fake.run_once(fn_target("inverse"), input_of({Value(0)}), policy).error_class(), "ZeroDivisionError");
  EXPECT_TRUE(fake.knows("identity"));
  EXPECT_FALSE(fake.knows("other"));
}

TEST(FakeExecutor, UnknownSourceIsNonExecutable) {
  FakeExecutor fake;
  ExecPolicy policy;
  EXPECT_TRUE(std::holds_alternative<NotExecutable>(fake.prepare_target(fn_target("def f(:"), policy)));
  EXPECT_EQ(fake.run_once(fn_target("def f(:"), input_of({Value(1)}), policy).tag(), OutcomeTag::kNonExecutable);
}

TEST(FakeExecutor, PreparedHandleIsReusedWithoutReparse) {
  FakeExecutor fake;
  fake.add("identity", [](const TestInput& in, const ExecPolicy&) { return ExecutionOutcome::value(in.values[0]); });
  ExecPolicy policy;
  auto prepared = std::get<PreparedHandle>(fake.prepare_target(fn_target("identity"), policy));
  for (std::size_t i = 0; i < 2000; ++i) fake.run_once(*prepared, input_of({Value(static_cast<std::int64_t>(i))}, i), policy);
  EXPECT_EQ(fake.prepare_count(), 1u);
  EXPECT_EQ(fake.run_count(), 2000u);
}

TEST(FakeExecutor, TableWithFallback) {
  FakeExecutor fake;
  fake.add_table("t", {{input_of({Value(1)}), ExecutionOutcome::value("one")}},
                 ExecutionOutcome::error("KeyError"));
  ExecPolicy policy;
  EXPECT_TRUE(fake.run_once(fn_target("t"), input_of({Value(1)}), policy).payload() == Value("one"));
  EXPECT_EQ(fake.run_once(fn_target("t"), input_of({Value(2)}), policy).error_class(), "KeyError");
}

TEST(FakeExecutor, DuplicateSourceRejected) {
  FakeExecutor fake;
  auto b = [](const TestInput&, const ExecPolicy&) { return ExecutionOutcome::value(0); };
  fake.add("s", b);
  EXPECT_THROW(fake.add("s", b), InvalidArgument);
}

TEST(AdapterProtocol, RequestCarriesArgs) {
  EXPECT_EQ(adapter_request(input_of({Value(1), Value("a")})), "{\"args\":[1,\"a\"]}\n");
}

TEST(AdapterProtocol, ResponsesDecode) {
  auto ok = parse_adapter_response(R"({"status": "ok", "value": [1, 2.5]})", {});
  EXPECT_TRUE(ok.payload() == Value::list({1, 2.5}));
  auto err = parse_adapter_response(R"({"status": "error", "error_class": "ValueError", "message": "m"})", {});
  EXPECT_EQ(err.error_class(), "ValueError");
  for (const char* bad : {"", "{", R"({"value": 1})", R"({"status": "ok"})", R"({"status": "error"})",
                          R"({"status": "weird"})"}) {
    EXPECT_THROW(parse_adapter_response(bad, {}), HarnessError) << bad;
  }
}

}  // namespace
}  // namespace eqfuzz
