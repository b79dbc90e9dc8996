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

#include "eqfuzz/exec.hpp"

#include <algorithm>
#include <fstream>

#include "eqfuzz/errors.hpp"
#include "process.hpp"

namespace eqfuzz {

std::string_view to_string(OutcomeTag tag) {
  switch (tag) {
    case OutcomeTag::kValue: return "value";
    case OutcomeTag::kError: return "error";
    case OutcomeTag::kTimeout: return "timeout";
    case OutcomeTag::kNonExecutable: return "non_executable";
  }
  return "?";
}

ExecutionOutcome ExecutionOutcome::value(Value v, Duration wall_time) {
  ExecutionOutcome o;
  o.payload_ = ValuePayload{std::move(v)};
  o.wall_time_ = wall_time;
  return o;
}

ExecutionOutcome ExecutionOutcome::error(std::string error_class, std::string message, Duration wall_time) {
  ExecutionOutcome o;
  o.payload_ = ErrorPayload{std::move(error_class), std::move(message)};
  o.wall_time_ = wall_time;
  return o;
}

ExecutionOutcome ExecutionOutcome::timeout(Duration wall_time) {
  ExecutionOutcome o;
  o.payload_ = TimeoutPayload{};
  o.wall_time_ = wall_time;
  return o;
}

ExecutionOutcome ExecutionOutcome::non_executable(std::string reason, Duration wall_time) {
  ExecutionOutcome o;
  o.payload_ = NonExecutablePayload{std::move(reason)};
  o.wall_time_ = wall_time;
  return o;
}

OutcomeTag ExecutionOutcome::tag() const { return static_cast<OutcomeTag>(payload_.index()); }

const Value& ExecutionOutcome::payload() const {
  if (const auto* p = std::get_if<ValuePayload>(&payload_)) return p->value;
  throw InvalidArgument("outcome has no value payload");
}

const std::string& ExecutionOutcome::error_class() const {
  if (const auto* p = std::get_if<ErrorPayload>(&payload_)) return p->error_class;
  throw InvalidArgument("outcome has no error payload");
}

const std::string& ExecutionOutcome::message() const {
  if (const auto* p = std::get_if<ErrorPayload>(&payload_)) return p->message;
  if (const auto* p = std::get_if<NonExecutablePayload>(&payload_)) return p->reason;
  throw InvalidArgument("outcome has no message");
}

Value ExecutionOutcome::to_value() const {
  Entries e;
  e.emplace_back("tag", std::string(to_string(tag())));
  switch (tag()) {
    case OutcomeTag::kValue:
      e.emplace_back("value", payload());
      break;
    case OutcomeTag::kError:
      e.emplace_back("error_class", error_class());
      e.emplace_back("message", message());
      break;
    case OutcomeTag::kNonExecutable:
      e.emplace_back("reason", message());
      break;
    case OutcomeTag::kTimeout:
      break;
  }
  return Value::map(std::move(e));
}

ExecutionOutcome Executor::run_once(const ExecTarget& target, const TestInput& input,
                                    const ExecPolicy& policy) const {
  PrepareResult prepared = prepare_target(target, policy);
  if (const auto* ne = std::get_if<NotExecutable>(&prepared)) {
    return ExecutionOutcome::non_executable(ne->reason);
  }
  return run_once(*std::get<PreparedHandle>(prepared), input, policy);
}

// ---------------------------------------------------------------------------
// FakeExecutor

namespace {

class FakePrepared : public PreparedTarget {
 public:
  FakePrepared(ExecTarget target, FakeExecutor::Behavior behavior)
      : PreparedTarget(std::move(target)), behavior(std::move(behavior)) {}
  FakeExecutor::Behavior behavior;
};

}  // namespace

void FakeExecutor::add(std::string source, Behavior behavior) {
  if (behaviors_.contains(source)) throw InvalidArgument("fake executor: source registered twice");
  behaviors_.emplace(std::move(source), std::move(behavior));
}

void FakeExecutor::add_table(std::string source, std::vector<std::pair<TestInput, ExecutionOutcome>> rows,
                             ExecutionOutcome fallback) {
  add(std::move(source), [rows = std::move(rows), fallback = std::move(fallback)](
                             const TestInput& input, const ExecPolicy&) {
    for (const auto& [key, outcome] : rows) {
      bool hit = input.rendered && key.rendered ? *input.rendered == *key.rendered
                                                : input.values == key.values;
      if (hit) return outcome;
    }
    return fallback;
  });
}

bool FakeExecutor::knows(std::string_view source) const {
  return behaviors_.find(source) != behaviors_.end();
}

PrepareResult FakeExecutor::prepare_target(const ExecTarget& target, const ExecPolicy&) const {
  ++prepare_count_;
  auto it = behaviors_.find(target.source);
  if (it == behaviors_.end()) return NotExecutable{"source not registered with the fake executor"};
  return std::make_shared<const FakePrepared>(target, it->second);
}

ExecutionOutcome FakeExecutor::run_once(const PreparedTarget& prepared, const TestInput& input,
                                        const ExecPolicy& policy) const {
  const auto* fake = dynamic_cast<const FakePrepared*>(&prepared);
  if (fake == nullptr) throw HarnessError("target was not prepared by this FakeExecutor");
  ++run_count_;
  ExecutionOutcome out = fake->behavior(input, policy);
  if (out.tag() == OutcomeTag::kTimeout && out.wall_time() < policy.per_run_timeout) {
    out = ExecutionOutcome::timeout(policy.per_run_timeout);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Adapter protocol

std::string adapter_request(const TestInput& input) {
  return to_text(Value::map({{"args", Value(List(input.values))}})) + "\n";
}

ExecutionOutcome parse_adapter_response(std::string_view text, Duration wall_time) {
  Value response;
  try {
    response = parse_value(text);
  } catch (const ParseError& e) {
    throw HarnessError(std::string("malformed adapter response: ") + e.what());
  }
  const Value* status = response.find("status");
  if (status == nullptr || !status->is_string()) {
    throw HarnessError("adapter response lacks a status");
  }
  if (status->as_string() == "ok") {
    const Value* value = response.find("value");
    if (value == nullptr) throw HarnessError("adapter ok response lacks a value");
    return ExecutionOutcome::value(*value, wall_time);
  }
  if (status->as_string() == "error") {
    const Value* cls = response.find("error_class");
    if (cls == nullptr || !cls->is_string()) throw HarnessError("adapter error response lacks error_class");
    const Value* msg = response.find("message");
    return ExecutionOutcome::error(cls->as_string(), msg && msg->is_string() ? msg->as_string() : "",
                                   wall_time);
  }
  throw HarnessError("unknown adapter status \"" + status->as_string() + "\"");
}

// ---------------------------------------------------------------------------
// ProcessExecutor

namespace {

class ProcessPrepared : public PreparedTarget {
 public:
  ProcessPrepared(ExecTarget target, std::unique_ptr<internal::TempDir> dir, std::filesystem::path source)
      : PreparedTarget(std::move(target)), dir(std::move(dir)), source_path(std::move(source)) {}
  std::unique_ptr<internal::TempDir> dir;
  std::filesystem::path source_path;
};

std::string replace_all(std::string s, std::string_view from, std::string_view to) {
  for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size()) {
    s.replace(pos, from.size(), to);
  }
  return s;
}

std::vector<std::string> expand(const std::vector<std::string>& tmpl, const ExecTarget& target,
                                const std::filesystem::path& adapter, const std::filesystem::path& source,
                                const std::filesystem::path& workdir) {
  std::vector<std::string> argv;
  bool has_source = false;
  for (const auto& arg : tmpl) {
    if (arg.find("{source}") != std::string::npos) has_source = true;
    std::string a = replace_all(arg, "{adapter}", adapter.string());
    a = replace_all(std::move(a), "{source}", source.string());
    a = replace_all(std::move(a), "{entry_point}", target.entry_point.value_or(""));
    a = replace_all(std::move(a), "{workdir}", workdir.string());
    argv.push_back(std::move(a));
  }
  if (!has_source) {
    argv.push_back(source.string());
    if (target.level == Level::kFunction && target.entry_point) argv.push_back(*target.entry_point);
  }
  return argv;
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

}  // namespace

ProcessExecutor::ProcessExecutor(std::filesystem::path adapter, std::filesystem::path scratch_root)
    : adapter_(std::move(adapter)), scratch_root_(std::move(scratch_root)) {}

PrepareResult ProcessExecutor::prepare_target(const ExecTarget& target, const ExecPolicy& policy) const {
  if (blank(target.source)) return NotExecutable{"empty source"};
  if (target.runtime_command.empty()) throw HarnessError("target has no runtime command");
  if (target.level == Level::kFunction && (!target.entry_point || target.entry_point->empty())) {
    throw HarnessError("function-level target without an entry point");
  }
  auto dir = std::make_unique<internal::TempDir>(scratch_root_, "eqfuzz-target-");
  std::filesystem::path source = dir->path() / "source";
  {
    std::ofstream f(source, std::ios::binary);
    f << target.source;
    if (!f) throw HarnessError("cannot write " + source.string());
  }
  if (!target.check_command.empty()) {
    internal::TempDir work(scratch_root_, "eqfuzz-check-");
    auto argv = expand(target.check_command, target, adapter_, source, work.path());
    auto res = internal::run_process(argv, work.path(), "", policy.per_run_timeout, policy.max_output_bytes);
    if (res.status != internal::ProcessResult::Status::kExited || res.exit_code != 0) {
      return NotExecutable{res.err.empty() ? "check command failed" : res.err};
    }
  }
  return std::make_shared<const ProcessPrepared>(target, std::move(dir), source);
}

ExecutionOutcome ProcessExecutor::run_once(const PreparedTarget& prepared, const TestInput& input,
                                           const ExecPolicy& policy) const {
  const auto* proc = dynamic_cast<const ProcessPrepared*>(&prepared);
  if (proc == nullptr) throw HarnessError("target was not prepared by this ProcessExecutor");
  const ExecTarget& target = proc->target();
  internal::TempDir work(scratch_root_, "eqfuzz-run-");
  auto argv = expand(target.runtime_command, target, adapter_, proc->source_path, work.path());

  std::string stdin_data;
  if (target.level == Level::kFunction) {
    stdin_data = adapter_request(input);
  } else {
    stdin_data = input.rendered ? *input.rendered : render_text_stream(input.values);
    if (!stdin_data.empty() && stdin_data.back() != '\n') stdin_data += '\n';
  }

  auto res = internal::run_process(argv, work.path(), stdin_data, policy.per_run_timeout,
                                   policy.max_output_bytes);
  using Status = internal::ProcessResult::Status;
  switch (res.status) {
    case Status::kTimedOut:
      return ExecutionOutcome::timeout(res.wall);
    case Status::kOutputOverflow:
      return ExecutionOutcome::error("OutputOverflow",
                                     "output exceeded " + std::to_string(policy.max_output_bytes) + " bytes",
                                     res.wall);
    case Status::kSignaled:
      if (target.level == Level::kProgram) {
        return ExecutionOutcome::error("Signal" + std::to_string(res.signal), res.err, res.wall);
      }
      throw HarnessError("adapter killed by signal " + std::to_string(res.signal));
    case Status::kExited:
      break;
  }
  if (target.level == Level::kProgram) {
    if (res.exit_code != 0) {
      return ExecutionOutcome::error("ExitStatus" + std::to_string(res.exit_code), res.err, res.wall);
    }
    return ExecutionOutcome::value(Value(std::move(res.out)), res.wall);
  }
  if (res.exit_code == kAdapterNonExecutableExit) {
    return ExecutionOutcome::non_executable(res.err, res.wall);
  }
  if (res.exit_code != 0) {
    throw HarnessError("adapter exited with status " + std::to_string(res.exit_code) + ": " + res.err);
  }
  return parse_adapter_response(res.out, res.wall);
}

}  // namespace eqfuzz
