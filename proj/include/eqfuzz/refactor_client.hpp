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

#ifndef EQFUZZ_REFACTOR_CLIENT_HPP_
#define EQFUZZ_REFACTOR_CLIENT_HPP_

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "eqfuzz/corpus.hpp"

namespace eqfuzz {

inline constexpr std::string_view kOriginalCodePlaceholder = "<Original Code>";

struct PromptTemplate {
  RefactorType refactor_type;
  // Contains kOriginalCodePlaceholder exactly once.
  std::string_view text;
};

const PromptTemplate& prompt_template(RefactorType type);

// Literal substitution of `original` for the placeholder. Throws
// InvalidArgument on empty input.
std::string render_prompt(RefactorType type, std::string_view original);

struct GenerationParams {
  std::string model;
  double temperature = 0.0;
  std::int64_t max_tokens = 2048;
  std::uint64_t seed = 0;
};

struct ServiceEndpoint {
  // e.g. "http://localhost:8000/v1"; requests go to <base_url>/chat/completions.
  std::string base_url;
  std::string credential_env = "EQFUZZ_API_KEY";
  std::chrono::milliseconds request_timeout{120000};
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{1000};
};

// One chat-completions call with a single user message. Transport failures,
// HTTP 5xx and 429 are retried with exponential backoff up to
// max_attempts; 401/403 raise AuthError immediately, as does a missing
// credential (before any network traffic). Exhausted retries raise
// RateLimitError (last status 429) or TransportError.
std::string request_refactoring(std::string_view prompt, const GenerationParams& params,
                                const ServiceEndpoint& endpoint);

// First fenced block's contents if any fence is present, else the whole
// text; leading and trailing blank lines removed either way. Idempotent.
// Throws EmptyRefactoring when nothing remains.
std::string sanitize_response(std::string_view raw);

// Where a campaign gets refactorings from. Offline files and the service
// yield the same records.
class RefactoringSource {
 public:
  virtual ~RefactoringSource() = default;
  virtual std::vector<std::string> models() const = 0;
  // nullopt: no refactoring exists for this cell.
  virtual std::optional<RefactoringRecord> fetch(const ProblemRecord& problem, const std::string& model,
                                                 RefactorType type) const = 0;
};

class OfflineRefactorings : public RefactoringSource {
 public:
  explicit OfflineRefactorings(std::vector<RefactoringRecord> records);
  std::vector<std::string> models() const override;
  std::optional<RefactoringRecord> fetch(const ProblemRecord& problem, const std::string& model,
                                         RefactorType type) const override;

 private:
  std::map<std::tuple<std::string, std::string, RefactorType>, RefactoringRecord> records_;
};

// Empty generations come back as records with empty source (scored as
// non-executable downstream). Rate-limit and transport failures yield
// nullopt; AuthError propagates.
class ServiceRefactorings : public RefactoringSource {
 public:
  ServiceRefactorings(ServiceEndpoint endpoint, std::vector<GenerationParams> per_model);
  std::vector<std::string> models() const override;
  std::optional<RefactoringRecord> fetch(const ProblemRecord& problem, const std::string& model,
                                         RefactorType type) const override;

 private:
  ServiceEndpoint endpoint_;
  std::vector<GenerationParams> params_;
};

}  // namespace eqfuzz

#endif  // EQFUZZ_REFACTOR_CLIENT_HPP_
