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

// ProcessExecutor against /bin/sh stand-ins: program-level targets are shell
// scripts, and function-level "sources" speak the adapter protocol
// themselves, so no language runtime is needed.

#include <chrono>
#include <fstream>

#include <gtest/gtest.h>

#include "eqfuzz/errors.hpp"
#include "eqfuzz/exec.hpp"

namespace eqfuzz {
namespace {

using namespace std::chrono_literals;

class ProcessExecutorTest : public ::testing::Test {
 protected:
  void SetUp() override {
    scratch_ = std::filesystem::temp_directory_path() /
               ("eqfuzz-process-test-" + std::to_string(::getpid()) + "-" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(scratch_);
    policy_.per_run_timeout = 2s;
  }
  void TearDown() override { std::filesystem::remove_all(scratch_); }

  ExecTarget program(std::string source) const {
    ExecTarget t;
    t.source = std::move(source);
    t.level = Level::kProgram;
    t.runtime_command = {"/bin/sh", "{source}"};
    return t;
  }

  // The source plays adapter: it reads {"args": [...]} and answers.
  ExecTarget function(std::string source) const {
    ExecTarget t;
    t.source = std::move(source);
    t.level = Level::kFunction;
    t.entry_point = "f";
    t.runtime_command = {"/bin/sh", "{source}", "{entry_point}"};
    return t;
  }

  static TestInput input(std::vector<Value> values, std::optional<std::string> rendered = std::nullopt) {
    TestInput in;
    in.values = std::move(values);
    in.rendered = std::move(rendered);
    return in;
  }

  std::size_t scratch_entries() const {
    return static_cast<std::size_t>(std::distance(std::filesystem::directory_iterator(scratch_),
                                                  std::filesystem::directory_iterator()));
  }

  std::filesystem::path scratch_;
  ExecPolicy policy_;
  ProcessExecutor make() const { return ProcessExecutor("", scratch_); }
};

constexpr const char* kIdentity =
    "read line\n"
    "arg=$(printf '%s' \"$line\" | sed 's/^{\"args\":\\[\\(.*\\)\\]}$/\\1/')\n"
    "printf '{\"status\":\"ok\",\"value\":%s}\\n' \"$arg\"\n";

constexpr const char* kInverse =
    "read line\n"
    "case \"$line\" in\n"
    "  '{\"args\":[0]}') printf '{\"status\":\"error\",\"error_class\":\"ZeroDivisionError\",\"message\":\"division by zero\"}\\n' ;;\n"
    "  *) printf '{\"status\":\"ok\",\"value\":1}\\n' ;;\n"
    "esac\n";

TEST_F(ProcessExecutorTest, IdentityFunctionReturnsItsArgument) {
  auto ex = make();
  auto out = ex.run_once(function(kIdentity), input({Value(7)}), policy_);
  ASSERT_TRUE(out.is_value()) << to_text(out.to_value());
  EXPECT_TRUE(out.payload() == Value(7));
  auto list = ex.run_once(function(kIdentity), input({Value::list({1, Value("x")})}), policy_);
  EXPECT_TRUE(list.payload() == Value::list({1, Value("x")}));
}

TEST_F(ProcessExecutorTest, InTargetErrorKeepsClass) {
  auto out = make().run_once(function(kInverse), input({Value(0)}), policy_);
  ASSERT_TRUE(out.is_error());
  EXPECT_EQ(out.error_class(), "ZeroDivisionError");
}

TEST_F(ProcessExecutorTest, AdapterExitCodes) {
  auto ex = make();
  EXPECT_EQ(ex.run_once(function("exit 3\n"), input({Value(1)}), policy_).tag(), OutcomeTag::kNonExecutable);
  EXPECT_THROW(ex.run_once(function("exit 1\n"), input({Value(1)}), policy_), HarnessError);
  EXPECT_THROW(ex.run_once(function("echo not-a-response\n"), input({Value(1)}), policy_), HarnessError);
}

TEST_F(ProcessExecutorTest, MissingRuntimeIsHarnessError) {
  ExecTarget t = program("echo hi\n");
  t.runtime_command = {"/nonexistent/runtime", "{source}"};
  EXPECT_THROW(make().run_once(t, input({}), policy_), HarnessError);
}

TEST_F(ProcessExecutorTest, ProgramStdoutIsThePayload) {
  auto out = make().run_once(program("read a; read b; echo $((a + b))\n"), input({}, "2\n40"), policy_);
  ASSERT_TRUE(out.is_value());
  EXPECT_TRUE(out.payload() == Value("42\n"));
}

TEST_F(ProcessExecutorTest, ProgramRenderedFromValuesWhenAbsent) {
  auto out = make().run_once(program("read a; read b; echo \"$b $a\"\n"), input({Value(1), Value("z")}), policy_);
  EXPECT_TRUE(out.payload() == Value("\"z\" 1\n"));
}

TEST_F(ProcessExecutorTest, ProgramFailuresBecomeErrors) {
  auto ex = make();
  EXPECT_EQ(ex.run_once(program("exit 4\n"), input({}), policy_).error_class(), "ExitStatus4");
  EXPECT_EQ(ex.run_once(program("kill -9 $$\n"), input({}), policy_).error_class(), "Signal9");
}

TEST_F(ProcessExecutorTest, InfiniteLoopTimesOut) {
  policy_.per_run_timeout = 300ms;
  auto start = std::chrono::steady_clock::now();
  auto out = make().run_once(program("while :; do :; done\n"), input({}), policy_);
  auto elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_EQ(out.tag(), OutcomeTag::kTimeout);
  EXPECT_GE(out.wall_time(), 300ms);
  EXPECT_LE(out.wall_time(), policy_.per_run_timeout + policy_.kill_grace);
  EXPECT_LT(elapsed, 2s);
}

TEST_F(ProcessExecutorTest, TimeoutKillsTheWholeProcessGroup) {
  policy_.per_run_timeout = 200ms;
  auto start = std::chrono::steady_clock::now();
  auto out = make().run_once(program("sleep 30 &\nsleep 30\n"), input({}), policy_);
  EXPECT_EQ(out.tag(), OutcomeTag::kTimeout);
  EXPECT_LT(std::chrono::steady_clock::now() - start, 3s);
}

TEST_F(ProcessExecutorTest, OutputCapYieldsOverflowError) {
  policy_.max_output_bytes = 1 << 16;
  auto out = make().run_once(program("yes | head -c 200000\n"), input({}), policy_);
  ASSERT_TRUE(out.is_error());
  EXPECT_EQ(out.error_class(), "OutputOverflow");
}

TEST_F(ProcessExecutorTest, EachRunGetsAFreshDirectory) {
  auto ex = make();
  ExecTarget t = program("if [ -e marker ]; then echo stale; else touch marker; echo fresh; fi\n");
  auto prepared = std::get<PreparedHandle>(ex.prepare_target(t, policy_));
  for (int i = 0; i < 5; ++i) EXPECT_TRUE(ex.run_once(*prepared, input({}), policy_).payload() == Value("fresh\n"));
}

TEST_F(ProcessExecutorTest, CheckCommandRunsOnceAtPrepare) {
  auto ex = make();
  std::filesystem::path counter = scratch_ / "checks";
  ExecTarget t = program("echo ok\n");
  t.check_command = {"/bin/sh", "-c", "echo x >> '" + counter.string() + "'"};
  auto prepared = std::get<PreparedHandle>(ex.prepare_target(t, policy_));
  for (int i = 0; i < 20; ++i) ex.run_once(*prepared, input({}), policy_);
  std::ifstream f(counter);
  std::string all((std::istreambuf_iterator<char>(f)), {});
  EXPECT_EQ(all, "x\n");
}

TEST_F(ProcessExecutorTest, FailedCheckMeansNonExecutable) {
  auto ex = make();
  ExecTarget syntax = program("if then fi\n");
  syntax.check_command = {"/bin/sh", "-n", "{source}"};
  EXPECT_TRUE(std::holds_alternative<NotExecutable>(ex.prepare_target(syntax, policy_)));
  // Parses, but fails while loading.
  ExecTarget load = program("[ \"$1\" = check ] && exit 1\necho ok\n");
  load.check_command = {"/bin/sh", "{source}", "check"};
  EXPECT_TRUE(std::holds_alternative<NotExecutable>(ex.prepare_target(load, policy_)));
  EXPECT_EQ(ex.run_once(load, input({}), policy_).tag(), OutcomeTag::kNonExecutable);
  EXPECT_TRUE(std::holds_alternative<NotExecutable>(ex.prepare_target(program("  \n"), policy_)));
}

TEST_F(ProcessExecutorTest, ScratchIsCleanedUp) {
  {
    auto ex = make();
    auto prepared = ex.prepare_target(program("echo ok\n"), policy_);
    ex.run_once(*std::get<PreparedHandle>(prepared), input({}), policy_);
  }
  EXPECT_EQ(scratch_entries(), 0u);
}

// Same behavior behind both executors gives the same outcomes.
TEST_F(ProcessExecutorTest, FakeExecutorIsInterchangeable) {
  FakeExecutor fake;
  fake.add(kInverse, [](const TestInput& in, const ExecPolicy&) {
    if (in.values[0] == Value(0)) return ExecutionOutcome::error("ZeroDivisionError", "division by zero");
    return ExecutionOutcome::value(1);
  });
  auto ex = make();
  for (int x : {0, 1, 2}) {
    auto a = ex.run_once(function(kInverse), input({Value(x)}), policy_);
    auto b = fake.run_once(function(kInverse), input({Value(x)}), policy_);
    EXPECT_TRUE(a.to_value() == b.to_value()) << to_text(a.to_value()) << " vs " << to_text(b.to_value());
  }
}

}  // namespace
}  // namespace eqfuzz
