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

// Benchmark problems and pre-generated refactorings, one JSON-style record
// per line.
//
// Corpus line:
//   {"id": "he/1", "dataset": "HumanEval", "level": "function",
//    "entry_point": "f", "reference_source": "def f(x): ...",
//    "tests": [{"args": [1], "expected": 2}, ...],
//    "schema": {...}}
// Program-level tests are {"stdin_text": "...", "expected_stdout": "..."}.
//
// Refactorings line:
//   {"problem_id": "he/1", "model": "m", "refactor_type": "optimization",
//    "source": "..."}

#ifndef EQFUZZ_CORPUS_HPP_
#define EQFUZZ_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "eqfuzz/input_gen.hpp"
#include "eqfuzz/schema.hpp"
#include "eqfuzz/value.hpp"

namespace eqfuzz {

struct FunctionCase {
  std::vector<Value> args;
  Value expected;
};

struct ProgramCase {
  std::string stdin_text;
  std::string expected_stdout;
};

using TestCase = std::variant<FunctionCase, ProgramCase>;

struct ProblemRecord {
  std::string id;
  std::string dataset;
  Level level = Level::kFunction;
  std::optional<std::string> entry_point;
  std::string reference_source;
  std::vector<TestCase> tests;
  InputSchema schema;
};

enum class RefactorType { kSimplification, kOptimization };
enum class RefactorOrigin { kOfflineFile, kService };

std::string_view to_string(RefactorType type);
std::optional<RefactorType> parse_refactor_type(std::string_view text);
inline constexpr RefactorType kAllRefactorTypes[] = {RefactorType::kSimplification,
                                                     RefactorType::kOptimization};

struct RefactoringRecord {
  std::string problem_id;
  std::string model;
  RefactorType refactor_type = RefactorType::kSimplification;
  std::string source;
  RefactorOrigin origin = RefactorOrigin::kOfflineFile;
};

// Throws ParseError (with line number) or CorpusError.
std::vector<ProblemRecord> load_corpus(const std::filesystem::path& path);
std::vector<ProblemRecord> parse_corpus(std::string_view text);
ProblemRecord parse_problem(const Value& object);
Value problem_to_value(const ProblemRecord& record);
std::string write_corpus(std::span<const ProblemRecord> records);

// k distinct records, uniform without replacement, original order kept.
// Pure in (records, k, seed). Throws InvalidArgument when k > size.
std::vector<ProblemRecord> sample_problems(std::span<const ProblemRecord> records, std::size_t k,
                                           std::uint64_t seed);

std::vector<RefactoringRecord> load_refactorings(const std::filesystem::path& path);
std::vector<RefactoringRecord> parse_refactorings(std::string_view text);
std::string write_refactorings(std::span<const RefactoringRecord> records);

// Reads a whole file; throws IoError.
std::string read_file(const std::filesystem::path& path);

}  // namespace eqfuzz

#endif  // EQFUZZ_CORPUS_HPP_
