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

#include "mini_fixture.hpp"

#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "eqfuzz/value.hpp"

namespace eqfuzz::testing {

namespace {

using Behavior = FakeExecutor::Behavior;
using Args = std::vector<Value>;

std::int64_t i64(const Value& v) { return *v.to_int64(); }

Behavior function(std::function<ExecutionOutcome(const Args&)> f) {
  return [f = std::move(f)](const TestInput& in, const ExecPolicy&) { return f(in.values); };
}

// Program-level sources see stdin only: one canonical value per line.
Behavior program(std::function<std::string(const Args&)> f) {
  return [f = std::move(f)](const TestInput& in, const ExecPolicy&) {
    Args args;
    std::istringstream lines(in.rendered.value_or(""));
    for (std::string line; std::getline(lines, line);) {
      if (!line.empty()) args.push_back(parse_value(line));
    }
    return ExecutionOutcome::value(f(args));
  };
}

Behavior hang() {
  return [](const TestInput&, const ExecPolicy& p) { return ExecutionOutcome::timeout(p.per_run_timeout); };
}

ExecutionOutcome ok(Value v) { return ExecutionOutcome::value(std::move(v)); }

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

std::int64_t count_if(const Value& s, std::string_view set) {
  std::int64_t n = 0;
  for (char c : s.as_string()) n += set.find(c) != std::string_view::npos;
  return n;
}

struct Roles {
  Behavior reference, simplification, optimization;
};

std::map<std::string, Roles> behaviors() {
  std::map<std::string, Roles> m;

  auto abs_val = function([](const Args& a) { return ok(std::abs(i64(a[0]))); });
  m["HumanEval/abs_val"] = {abs_val, abs_val, function([](const Args& a) { return ok(a[0]); })};

  auto sum_to = function([](const Args& a) {
    std::int64_t n = i64(a[0]);
    return ok(n * (n + 1) / 2);
  });
  m["HumanEval/sum_to"] = {sum_to, sum_to, sum_to};

  auto safe_div = function([](const Args& a) {
    std::int64_t d = i64(a[0]) - 5;
    if (d == 0) return ExecutionOutcome::error("ZeroDivisionError", "integer division or modulo by zero");
    return ok(floor_div(100, d));
  });
  m["HumanEval/safe_div"] = {safe_div, safe_div, hang()};

  auto vowels = function([](const Args& a) { return ok(count_if(a[0], "aeiou")); });
  m["HumanEval/count_vowels"] = {vowels, vowels, function([](const Args& a) { return ok(count_if(a[0], "aeio")); })};

  auto max_of = function([](const Args& a) {
    const List& xs = a[0].as_list();
    std::int64_t best = i64(xs.front());
    for (const auto& v : xs) best = std::max(best, i64(v));
    return ok(best);
  });
  m["MBPP/max_of_list"] = {max_of, max_of, function([](const Args& a) { return ok(a[0].as_list().back()); })};

  auto is_even = function([](const Args& a) { return ok(i64(a[0]) % 2 == 0); });
  m["MBPP/is_even"] = {is_even, is_even, is_even};

  auto count_big = [](std::int64_t threshold) {
    return function([threshold](const Args& a) {
      std::int64_t n = 0;
      for (const auto& v : a[0].as_list()) n += i64(v) > threshold;
      return ok(n);
    });
  };
  m["MBPP/count_big"] = {count_big(4), count_big(4), count_big(3)};

  auto twice = program([](const Args& a) { return std::to_string(2 * i64(a[0])) + "\n"; });
  m["APPS/double"] = {twice, twice, twice};

  auto min_max = program([](const Args& a) {
    std::int64_t x = i64(a[0]), y = i64(a[1]);
    return std::to_string(std::min(x, y)) + " " + std::to_string(std::max(x, y)) + "\n";
  });
  m["APPS/min_max"] = {min_max, min_max, program([](const Args& a) {
                         return std::to_string(i64(a[1])) + " " + std::to_string(i64(a[0])) + "\n";
                       })};

  auto sum_list = program([](const Args& a) {
    std::int64_t s = 0;
    for (const auto& v : a[0].as_list()) s += i64(v);
    return std::to_string(s) + "\n";
  });
  m["APPS/sum_list"] = {sum_list, sum_list, sum_list};
  return m;
}

}  // namespace

std::filesystem::path fixture_dir() { return EQFUZZ_FIXTURE_DIR; }
std::filesystem::path mini_corpus_path() { return fixture_dir() / "mini_corpus" / "corpus.jsonl"; }
std::filesystem::path mini_refactorings_path() { return fixture_dir() / "mini_corpus" / "refactorings.jsonl"; }
std::filesystem::path broken_refactorings_path() { return fixture_dir() / "broken" / "refactorings.jsonl"; }

std::vector<ProblemRecord> mini_corpus() { return load_corpus(mini_corpus_path()); }
std::vector<RefactoringRecord> mini_refactorings() { return load_refactorings(mini_refactorings_path()); }

void register_mini_behaviors(FakeExecutor& executor) {
  auto table = behaviors();
  for (const auto& p : mini_corpus()) {
    auto it = table.find(p.id);
    if (it == table.end()) throw std::logic_error("no behavior for " + p.id);
    executor.add(p.reference_source, it->second.reference);
  }
  auto add_refactorings = [&](const std::vector<RefactoringRecord>& records) {
    for (const auto& r : records) {
      if (executor.knows(r.source)) continue;
      const Roles& roles = table.at(r.problem_id);
      // The broken set reuses mini-corpus sources except the broken one,
      // which is left unregistered on purpose.
      executor.add(r.source, r.refactor_type == RefactorType::kSimplification ? roles.simplification
                                                                              : roles.optimization);
    }
  };
  add_refactorings(mini_refactorings());
  std::vector<RefactoringRecord> broken;
  for (auto& r : load_refactorings(broken_refactorings_path())) {
    if (r.source.find("def abs_val(x)\n") == std::string::npos) broken.push_back(std::move(r));
  }
  add_refactorings(broken);
}

const FakeExecutor& mini_executor() {
  static const FakeExecutor* executor = [] {
    auto* e = new FakeExecutor;
    register_mini_behaviors(*e);
    return e;
  }();
  return *executor;
}

}  // namespace eqfuzz::testing
