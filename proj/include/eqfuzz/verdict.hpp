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

#ifndef EQFUZZ_VERDICT_HPP_
#define EQFUZZ_VERDICT_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "eqfuzz/compare.hpp"
#include "eqfuzz/corpus.hpp"
#include "eqfuzz/exec.hpp"
#include "eqfuzz/input_gen.hpp"
#include "eqfuzz/schema.hpp"

namespace eqfuzz {

enum class VerdictStatus { kEquivalent, kNonEquivalent, kExcludedTimeout, kExcludedNonExecutable };
enum class ScanMode { kEarlyExit, kFullScan };

std::string_view to_string(VerdictStatus status);
std::string_view to_string(ScanMode mode);
std::optional<ScanMode> parse_scan_mode(std::string_view text);

struct Witness {
  TestInput input;
  ExecutionOutcome original;
  ExecutionOutcome refactored;
};

struct Verdict {
  VerdictStatus status = VerdictStatus::kEquivalent;
  // Set iff status is Equivalent (1) or NonEquivalent (0).
  std::optional<int> eq_bit;
  // matches / n_compared; full_scan only.
  std::optional<double> similarity;
  // Smallest mismatching input index; NonEquivalent only.
  std::optional<Witness> witness;
  std::size_t n_compared = 0;
  std::size_t n_matched = 0;
  // Inputs dropped because the original timed out on them.
  std::size_t n_discarded = 0;
};

struct SuiteResult {
  int corr_bit = 1;
  std::size_t n_tests = 0;
  std::optional<std::size_t> first_failure;
};

struct CheckConfig {
  GenConfig gen;
  ExecPolicy policy;
  CompareConfig compare;
  ScanMode mode = ScanMode::kEarlyExit;
  // Input streams are keyed by this id.
  std::string problem_id;
  std::size_t workers = 1;
};

// Discards allowed per problem: 10% of the input budget.
constexpr std::size_t discard_cap(std::size_t n) { return n / 10; }

// Differential check of `refactored` against `original` on generated
// inputs, reduced in index order:
//   - refactored cannot be prepared (or reports NonExecutable) =>
//     ExcludedNonExecutable; original cannot => HarnessError
//   - original times out on an input => input discarded, the next index is
//     drawn in its place; more than discard_cap(n) => DataQualityError
//   - refactored times out before any mismatch => ExcludedTimeout; after
//     one, the timeout counts as a non-match
//   - first mismatch => NonEquivalent with that witness; early_exit stops
//     there, full_scan continues to compute similarity
// The result does not depend on cfg.workers.
Verdict check_equivalence(const Executor& executor, const ExecTarget& original, const ExecTarget& refactored,
                          const InputSchema& schema, const CheckConfig& cfg);

// Runs every test against `refactored`. Function level passes iff the
// outcome is a Value equal to `expected`; program level iff normalized
// stdout equals normalized expected_stdout. A target that cannot be
// prepared scores corr_bit 0 with first_failure 0.
SuiteResult check_test_suite(const Executor& executor, const ExecTarget& refactored,
                             std::span<const TestCase> tests, const ExecPolicy& policy,
                             const CompareConfig& cmp);

struct RunRecord {
  TestInput input;
  ExecutionOutcome original;
  ExecutionOutcome refactored;
};

// Fraction of records whose outcomes match under outcomes_equal; pairs
// involving Timeout or NonExecutable count as non-matches. Throws
// InvalidArgument on an empty log.
double similarity_score(std::span<const RunRecord> log, const CompareConfig& cmp);

// Applies program-output normalization to string payloads at program
// level; other outcomes pass through.
ExecutionOutcome comparable_outcome(const ExecutionOutcome& outcome, Level level, const CompareConfig& cmp);

Value verdict_to_value(const Verdict& verdict);
Value suite_to_value(const SuiteResult& suite);

}  // namespace eqfuzz

#endif  // EQFUZZ_VERDICT_HPP_
