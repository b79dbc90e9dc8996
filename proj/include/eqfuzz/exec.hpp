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

#ifndef EQFUZZ_EXEC_HPP_
#define EQFUZZ_EXEC_HPP_

#include <atomic>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "eqfuzz/input_gen.hpp"
#include "eqfuzz/value.hpp"

namespace eqfuzz {

using Duration = std::chrono::nanoseconds;

enum class OutcomeTag { kValue, kError, kTimeout, kNonExecutable };

std::string_view to_string(OutcomeTag tag);

// Result of one execution. Exactly one payload shape per tag.
class ExecutionOutcome {
 public:
  static ExecutionOutcome value(Value v, Duration wall_time = {});
  static ExecutionOutcome error(std::string error_class, std::string message = {},
                                Duration wall_time = {});
  static ExecutionOutcome timeout(Duration wall_time);
  static ExecutionOutcome non_executable(std::string reason = {}, Duration wall_time = {});

  OutcomeTag tag() const;
  bool is_value() const { return tag() == OutcomeTag::kValue; }
  bool is_error() const { return tag() == OutcomeTag::kError; }

  const Value& payload() const;             // kValue only
  const std::string& error_class() const;   // kError only
  const std::string& message() const;       // kError / kNonExecutable
  Duration wall_time() const { return wall_time_; }

  // {"tag": ..., "value" | "error_class" + "message" | "reason"}; wall time
  // is left out so replays compare equal.
  Value to_value() const;

 private:
  struct ValuePayload { Value value; };
  struct ErrorPayload { std::string error_class, message; };
  struct TimeoutPayload {};
  struct NonExecutablePayload { std::string reason; };

  std::variant<ValuePayload, ErrorPayload, TimeoutPayload, NonExecutablePayload> payload_;
  Duration wall_time_{};
};

// Command templates may use {adapter}, {source}, {entry_point} and
// {workdir}. When {source} is absent the source path (and, at function
// level, the entry point) are appended.
struct ExecTarget {
  std::string source;
  Level level = Level::kFunction;
  std::optional<std::string> entry_point;
  std::vector<std::string> runtime_command;
  // Optional syntax/load check run once by prepare_target; a nonzero exit
  // marks the target NonExecutable.
  std::vector<std::string> check_command;
};

struct ExecPolicy {
  Duration per_run_timeout = std::chrono::seconds(5);
  std::size_t max_output_bytes = 1 << 20;
  // Slack allowed between the deadline and the reaped child.
  Duration kill_grace = std::chrono::milliseconds(500);
};

// Adapter exit code for "source could not be loaded".
inline constexpr int kAdapterNonExecutableExit = 3;

class PreparedTarget {
 public:
  explicit PreparedTarget(ExecTarget target) : target_(std::move(target)) {}
  virtual ~PreparedTarget() = default;
  const ExecTarget& target() const { return target_; }

 private:
  ExecTarget target_;
};

using PreparedHandle = std::shared_ptr<const PreparedTarget>;
struct NotExecutable {
  std::string reason;
};
using PrepareResult = std::variant<PreparedHandle, NotExecutable>;

// Runs targets. Implementations are safe to call concurrently.
class Executor {
 public:
  virtual ~Executor() = default;

  virtual PrepareResult prepare_target(const ExecTarget& target, const ExecPolicy& policy) const = 0;

  // Throws HarnessError for failures of the harness itself.
  virtual ExecutionOutcome run_once(const PreparedTarget& prepared, const TestInput& input,
                                    const ExecPolicy& policy) const = 0;

  // Prepares, then runs; NotExecutable becomes a NonExecutable outcome.
  ExecutionOutcome run_once(const ExecTarget& target, const TestInput& input,
                            const ExecPolicy& policy) const;
};

// In-process executor. Sources are looked up verbatim in a behavior table;
// unknown sources are NonExecutable.
class FakeExecutor : public Executor {
 public:
  using Behavior = std::function<ExecutionOutcome(const TestInput&, const ExecPolicy&)>;

  // Throws InvalidArgument if `source` already has a behavior.
  void add(std::string source, Behavior behavior);
  // Fixed input->outcome table keyed by TestInput::values (function level)
  // or TestInput::rendered (program level). Inputs not in the table yield
  // `fallback`.
  void add_table(std::string source, std::vector<std::pair<TestInput, ExecutionOutcome>> rows,
                 ExecutionOutcome fallback);
  bool knows(std::string_view source) const;

  PrepareResult prepare_target(const ExecTarget& target, const ExecPolicy& policy) const override;
  ExecutionOutcome run_once(const PreparedTarget& prepared, const TestInput& input,
                            const ExecPolicy& policy) const override;
  using Executor::run_once;

  std::size_t prepare_count() const { return prepare_count_.load(); }
  std::size_t run_count() const { return run_count_.load(); }

 private:
  std::map<std::string, Behavior, std::less<>> behaviors_;
  mutable std::atomic<std::size_t> prepare_count_{0};
  mutable std::atomic<std::size_t> run_count_{0};
};

// Runs targets as child processes, one fresh working directory per run.
// Function level speaks the adapter protocol over stdin/stdout; program
// level feeds TestInput::rendered and captures raw stdout.
class ProcessExecutor : public Executor {
 public:
  explicit ProcessExecutor(std::filesystem::path adapter = {},
                           std::filesystem::path scratch_root = std::filesystem::temp_directory_path());

  PrepareResult prepare_target(const ExecTarget& target, const ExecPolicy& policy) const override;
  ExecutionOutcome run_once(const PreparedTarget& prepared, const TestInput& input,
                            const ExecPolicy& policy) const override;
  using Executor::run_once;

 private:
  std::filesystem::path adapter_;
  std::filesystem::path scratch_root_;
};

// Request body written to the adapter: {"args": [...]} plus newline.
std::string adapter_request(const TestInput& input);

// Decodes an adapter response object. Throws HarnessError when malformed.
ExecutionOutcome parse_adapter_response(std::string_view text, Duration wall_time);

}  // namespace eqfuzz

#endif  // EQFUZZ_EXEC_HPP_
