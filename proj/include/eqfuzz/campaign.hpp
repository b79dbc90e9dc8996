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

#ifndef EQFUZZ_CAMPAIGN_HPP_
#define EQFUZZ_CAMPAIGN_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "eqfuzz/compare.hpp"
#include "eqfuzz/corpus.hpp"
#include "eqfuzz/exec.hpp"
#include "eqfuzz/refactor_client.hpp"
#include "eqfuzz/verdict.hpp"

namespace eqfuzz {

struct CampaignConfig {
  std::uint64_t seed = 0;
  std::size_t n_function = kFunctionLevelInputs;
  std::size_t n_program = kProgramLevelInputs;
  std::size_t max_rejections = kDefaultMaxRejections;
  ExecPolicy policy;
  CompareConfig compare;
  std::size_t workers = 1;
  // Command templates handed to the executor (see ExecTarget).
  std::vector<std::string> function_command;
  std::vector<std::string> program_command;
  std::vector<std::string> check_command;
  // Recorded in the report header when refactorings come from a service.
  std::vector<GenerationParams> generation;
};

enum class CellState { kEvaluated, kMissing, kError };

struct PairResult {
  std::string problem_id;
  std::string model;
  RefactorType refactor_type = RefactorType::kSimplification;
  std::string dataset;
  CellState state = CellState::kEvaluated;
  Verdict verdict;
  SuiteResult suite;
  std::string error;
  Duration elapsed{};
};

struct Table2Cell {
  std::size_t n_attempted = 0;
  std::size_t n_analyzed = 0;
  std::size_t n_noneq = 0;
  std::size_t excluded_timeout = 0;
  std::size_t excluded_non_executable = 0;
  std::size_t missing = 0;
  std::size_t error = 0;

  // 100 * n_noneq / n_analyzed, or 0 when nothing was analyzed.
  double pct_noneq() const;
  std::size_t exclusions() const { return excluded_timeout + excluded_non_executable + missing + error; }
  void add(const PairResult& pair);
  bool operator==(const Table2Cell&) const = default;
};

struct Table3Row {
  std::size_t n_total_analyzed = 0;
  std::size_t n_noneq = 0;
  std::size_t n_noneq_with_corr1 = 0;

  // 100 * n_noneq_with_corr1 / n_noneq, or 0 when n_noneq is 0.
  double pct_of_noneq() const;
  bool operator==(const Table3Row&) const = default;
};

// One line per evaluated cell; no timings so reports stay reproducible.
struct PairSummary {
  std::string problem_id;
  std::string model;
  std::string refactor_type;
  std::string dataset;
  std::string status;
  std::optional<std::int64_t> eq_bit;
  std::optional<double> similarity;
  std::optional<std::int64_t> witness_index;
  std::int64_t n_compared = 0;
  std::int64_t n_discarded = 0;
  std::optional<std::int64_t> corr_bit;
  std::optional<std::int64_t> first_failure;
  std::string error;
  bool operator==(const PairSummary&) const = default;
};

using Table2Key = std::tuple<std::string, std::string, std::string>;  // model, refactor type, dataset

struct CampaignReport {
  // Every setting that can change a verdict.
  std::map<std::string, Value> header;
  std::map<Table2Key, Table2Cell> table2;
  // Per model, pooled over datasets and refactoring types.
  std::map<std::string, Table2Cell> overall;
  std::map<std::string, Table3Row> table3;
  // Keys: timeout, non_executable, missing, error.
  std::map<std::string, std::size_t> exclusions;
  std::vector<PairSummary> pairs;

  bool has_errors() const;
  bool operator==(const CampaignReport&) const = default;
};

struct CampaignResult {
  CampaignReport report;
  std::vector<PairResult> pairs;
};

// Evaluates every (problem, model, refactor type) cell with full-scan
// equivalence and the problem's test suite. Cells run on cfg.workers
// threads; results do not depend on the worker count.
CampaignResult run_campaign(std::span<const ProblemRecord> problems, const RefactoringSource& source,
                            const Executor& executor, const CampaignConfig& cfg);

// Table-3 rows from already evaluated pairs.
std::map<std::string, Table3Row> count_divergence(std::span<const PairResult> results);

// Aggregates pairs into a report (used by run_campaign).
CampaignReport build_report(std::span<const PairResult> pairs, std::span<const std::string> models,
                            std::span<const std::string> datasets, const CampaignConfig& cfg);

enum class ReportFormat { kStructured, kCsv };

Value report_to_value(const CampaignReport& report);
CampaignReport report_from_value(const Value& value);
std::string report_to_csv(const CampaignReport& report);
std::string report_to_text(const CampaignReport& report);

// Writes report.json or report.csv into `dir` (created if needed) and
// returns the path. Throws IoError when the file cannot be written.
std::filesystem::path write_report(const CampaignReport& report, ReportFormat format,
                                   const std::filesystem::path& dir);
CampaignReport read_report(const std::filesystem::path& path);

}  // namespace eqfuzz

#endif  // EQFUZZ_CAMPAIGN_HPP_
