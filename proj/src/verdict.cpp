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

#include "eqfuzz/verdict.hpp"

#include <atomic>
#include <exception>
#include <thread>

#include "eqfuzz/errors.hpp"

namespace eqfuzz {

std::string_view to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::kEquivalent: return "equivalent";
    case VerdictStatus::kNonEquivalent: return "non_equivalent";
    case VerdictStatus::kExcludedTimeout: return "excluded_timeout";
    case VerdictStatus::kExcludedNonExecutable: return "excluded_non_executable";
  }
  return "?";
}

std::string_view to_string(ScanMode mode) {
  return mode == ScanMode::kEarlyExit ? "early_exit" : "full_scan";
}

std::optional<ScanMode> parse_scan_mode(std::string_view text) {
  if (text == "early_exit") return ScanMode::kEarlyExit;
  if (text == "full_scan") return ScanMode::kFullScan;
  return std::nullopt;
}

ExecutionOutcome comparable_outcome(const ExecutionOutcome& outcome, Level level, const CompareConfig& cmp) {
  if (level != Level::kProgram || !outcome.is_value() || !outcome.payload().is_string()) return outcome;
  return ExecutionOutcome::value(normalize_program_output(outcome.payload().as_string(), cmp),
                                 outcome.wall_time());
}

namespace {

bool comparable(const ExecutionOutcome& o) {
  return o.tag() == OutcomeTag::kValue || o.tag() == OutcomeTag::kError;
}

// Everything computed for one input index, before reduction.
struct Slot {
  std::optional<TestInput> input;
  std::optional<ExecutionOutcome> original;
  std::optional<ExecutionOutcome> refactored;
  std::exception_ptr error;
};

void fill_slot(Slot& slot, std::size_t index, const Executor& executor, const PreparedTarget& original,
               const PreparedTarget& refactored, const InputSchema& schema, const CheckConfig& cfg) {
  try {
    slot.input = generate_input(schema, cfg.gen, cfg.problem_id, index);
    slot.original = executor.run_once(original, *slot.input, cfg.policy);
    if (slot.original->tag() == OutcomeTag::kTimeout) return;  // discarded; refactored not needed
    slot.refactored = executor.run_once(refactored, *slot.input, cfg.policy);
  } catch (...) {
    slot.error = std::current_exception();
  }
}

void fill_batch(std::vector<Slot>& slots, std::size_t first_index, const Executor& executor,
                const PreparedTarget& original, const PreparedTarget& refactored, const InputSchema& schema,
                const CheckConfig& cfg) {
  std::size_t workers = std::max<std::size_t>(1, std::min(cfg.workers, slots.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < slots.size(); ++i) {
      fill_slot(slots[i], first_index + i, executor, original, refactored, schema, cfg);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < slots.size();) {
        fill_slot(slots[i], first_index + i, executor, original, refactored, schema, cfg);
      }
    });
  }
}

PreparedHandle prepare_original(const Executor& executor, const ExecTarget& original, const ExecPolicy& policy) {
  PrepareResult prepared = executor.prepare_target(original, policy);
  if (const auto* ne = std::get_if<NotExecutable>(&prepared)) {
    throw HarnessError("reference implementation is not executable: " + ne->reason);
  }
  return std::get<PreparedHandle>(prepared);
}

}  // namespace

Verdict check_equivalence(const Executor& executor, const ExecTarget& original, const ExecTarget& refactored,
                          const InputSchema& schema, const CheckConfig& cfg) {
  if (cfg.gen.n < 1) throw InvalidArgument("input budget must be >= 1");
  PreparedHandle prep_original = prepare_original(executor, original, cfg.policy);
  Verdict verdict;
  PrepareResult prep_refactored = executor.prepare_target(refactored, cfg.policy);
  if (std::holds_alternative<NotExecutable>(prep_refactored)) {
    verdict.status = VerdictStatus::kExcludedNonExecutable;
    return verdict;
  }
  const PreparedTarget& prep_ref = *std::get<PreparedHandle>(prep_refactored);

  const std::size_t n = cfg.gen.n;
  const std::size_t cap = discard_cap(n);
  const std::size_t batch = cfg.workers <= 1 ? 1 : cfg.workers * 8;
  std::size_t next_index = 0;

  while (verdict.n_compared < n) {
    std::size_t want = std::min(batch, n - verdict.n_compared);
    std::vector<Slot> slots(want);
    fill_batch(slots, next_index, executor, *prep_original, prep_ref, schema, cfg);
    for (std::size_t k = 0; k < slots.size(); ++k) {
      Slot& slot = slots[k];
      if (slot.error) std::rethrow_exception(slot.error);
      const ExecutionOutcome& orig = *slot.original;
      if (orig.tag() == OutcomeTag::kTimeout) {
        if (++verdict.n_discarded > cap) {
          throw DataQualityError("problem \"" + cfg.problem_id + "\": original timed out on " +
                                 std::to_string(verdict.n_discarded) + " inputs (cap " + std::to_string(cap) + ")");
        }
        continue;
      }
      if (orig.tag() == OutcomeTag::kNonExecutable) {
        throw HarnessError("reference implementation reported non-executable at input " +
                           std::to_string(next_index + k));
      }
      const ExecutionOutcome& ref = *slot.refactored;
      if (ref.tag() == OutcomeTag::kNonExecutable) {
        return Verdict{VerdictStatus::kExcludedNonExecutable, std::nullopt, std::nullopt, std::nullopt,
                       verdict.n_compared, verdict.n_matched, verdict.n_discarded};
      }
      ++verdict.n_compared;
      bool match = false;
      if (ref.tag() == OutcomeTag::kTimeout) {
        if (!verdict.witness) {
          return Verdict{VerdictStatus::kExcludedTimeout, std::nullopt, std::nullopt, std::nullopt,
                         verdict.n_compared, verdict.n_matched, verdict.n_discarded};
        }
      } else {
        match = outcomes_equal(comparable_outcome(orig, original.level, cfg.compare),
                               comparable_outcome(ref, refactored.level, cfg.compare), cfg.compare);
      }
      if (match) {
        ++verdict.n_matched;
        continue;
      }
      if (!verdict.witness) {
        verdict.witness = Witness{std::move(*slot.input), orig, ref};
        if (cfg.mode == ScanMode::kEarlyExit) {
          verdict.status = VerdictStatus::kNonEquivalent;
          verdict.eq_bit = 0;
          return verdict;
        }
      }
    }
    next_index += slots.size();
  }

  verdict.status = verdict.witness ? VerdictStatus::kNonEquivalent : VerdictStatus::kEquivalent;
  verdict.eq_bit = verdict.witness ? 0 : 1;
  if (cfg.mode == ScanMode::kFullScan) {
    verdict.similarity = static_cast<double>(verdict.n_matched) / static_cast<double>(verdict.n_compared);
  }
  return verdict;
}

SuiteResult check_test_suite(const Executor& executor, const ExecTarget& refactored,
                             std::span<const TestCase> tests, const ExecPolicy& policy,
                             const CompareConfig& cmp) {
  SuiteResult result;
  result.n_tests = tests.size();
  PrepareResult prepared = executor.prepare_target(refactored, policy);
  if (std::holds_alternative<NotExecutable>(prepared)) {
    result.corr_bit = 0;
    result.first_failure = 0;
    return result;
  }
  const PreparedTarget& target = *std::get<PreparedHandle>(prepared);
  for (std::size_t i = 0; i < tests.size(); ++i) {
    TestInput input;
    input.index = i;
    bool pass = false;
    if (const auto* fc = std::get_if<FunctionCase>(&tests[i])) {
      input.values = fc->args;
      ExecutionOutcome out = executor.run_once(target, input, policy);
      pass = out.is_value() && values_equal(out.payload(), fc->expected, cmp);
    } else {
      const auto& pc = std::get<ProgramCase>(tests[i]);
      input.rendered = pc.stdin_text;
      ExecutionOutcome out = executor.run_once(target, input, policy);
      pass = out.is_value() && out.payload().is_string() &&
             normalize_program_output(out.payload().as_string(), cmp) ==
                 normalize_program_output(pc.expected_stdout, cmp);
    }
    if (!pass && !result.first_failure) result.first_failure = i;
  }
  result.corr_bit = result.first_failure ? 0 : 1;
  return result;
}

double similarity_score(std::span<const RunRecord> log, const CompareConfig& cmp) {
  if (log.empty()) throw InvalidArgument("similarity of an empty run log");
  std::size_t matches = 0;
  for (const auto& r : log) {
    if (comparable(r.original) && comparable(r.refactored) && outcomes_equal(r.original, r.refactored, cmp)) {
      ++matches;
    }
  }
  return static_cast<double>(matches) / static_cast<double>(log.size());
}

Value verdict_to_value(const Verdict& v) {
  Entries e;
  e.emplace_back("status", std::string(to_string(v.status)));
  e.emplace_back("eq_bit", v.eq_bit ? Value(*v.eq_bit) : Value());
  e.emplace_back("similarity", v.similarity ? Value(*v.similarity) : Value());
  e.emplace_back("n_compared", static_cast<std::int64_t>(v.n_compared));
  e.emplace_back("n_matched", static_cast<std::int64_t>(v.n_matched));
  e.emplace_back("n_discarded", static_cast<std::int64_t>(v.n_discarded));
  if (v.witness) {
    Entries w;
    w.emplace_back("index", static_cast<std::int64_t>(v.witness->input.index));
    w.emplace_back("values", Value(List(v.witness->input.values)));
    if (v.witness->input.rendered) w.emplace_back("rendered", *v.witness->input.rendered);
    w.emplace_back("original", v.witness->original.to_value());
    w.emplace_back("refactored", v.witness->refactored.to_value());
    e.emplace_back("witness", Value::map(std::move(w)));
  } else {
    e.emplace_back("witness", Value());
  }
  return Value::map(std::move(e));
}

Value suite_to_value(const SuiteResult& s) {
  return Value::map({{"corr_bit", s.corr_bit},
                     {"n_tests", static_cast<std::int64_t>(s.n_tests)},
                     {"first_failure", s.first_failure ? Value(static_cast<std::int64_t>(*s.first_failure)) : Value()}});
}

}  // namespace eqfuzz
