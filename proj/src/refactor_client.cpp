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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "eqfuzz/refactor_client.hpp"

#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "eqfuzz/errors.hpp"

namespace eqfuzz {

namespace {

constexpr std::string_view kOptimizationPrompt =
    "Task: Optimize the following Python program/function so that it runs faster.\n"
    "Instructions:\n"
    "- Output ONLY valid Python code.\n"
    "- Do NOT include any explanations, comments, markdown, examples, or extra text.\n"
    "- If you cannot safely optimize, output the original program/function unchanged.\n"
    "Python program/function:\n"
    "<Original Code>";

constexpr std::string_view kSimplificationPrompt =
    "Task: Simplify the following Python program/function by removing redundancy and making it "
    "more concise.\n"
    "Instructions:\n"
    "- Output ONLY valid Python code.\n"
    "- Do NOT include any explanations, comments, markdown, examples, or extra text.\n"
    "- If you cannot safely simplify, output the original program/function unchanged.\n"
    "Python program/function:\n"
    "<Original Code>";

const PromptTemplate kTemplates[] = {
    {RefactorType::kSimplification, kSimplificationPrompt},
    {RefactorType::kOptimization, kOptimizationPrompt},
};

}  // namespace

const PromptTemplate& prompt_template(RefactorType type) {
  return type == RefactorType::kSimplification ? kTemplates[0] : kTemplates[1];
}

std::string render_prompt(RefactorType type, std::string_view original) {
  if (original.empty()) throw InvalidArgument("cannot render a prompt for empty code");
  std::string_view text = prompt_template(type).text;
  std::size_t at = text.find(kOriginalCodePlaceholder);
  std::string out;
  out.reserve(text.size() + original.size());
  out.append(text.substr(0, at));
  out.append(original);
  out.append(text.substr(at + kOriginalCodePlaceholder.size()));
  return out;
}

// ---------------------------------------------------------------------------
// Service

namespace {

struct ParsedUrl {
  std::string scheme_host_port;
  std::string path;
};

ParsedUrl split_url(const std::string& url) {
  std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw InvalidArgument("endpoint URL needs a scheme: " + url);
  std::size_t path_start = url.find('/', scheme_end + 3);
  ParsedUrl out;
  out.scheme_host_port = url.substr(0, path_start);
  out.path = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!out.path.empty() && out.path.back() == '/') out.path.pop_back();
  out.path += "/chat/completions";
  return out;
}

}  // namespace

std::string request_refactoring(std::string_view prompt, const GenerationParams& params,
                                const ServiceEndpoint& endpoint) {
  const char* credential = std::getenv(endpoint.credential_env.c_str());
  if (credential == nullptr || *credential == '\0') {
    throw AuthError("credential variable " + endpoint.credential_env + " is not set");
  }
  ParsedUrl url = split_url(endpoint.base_url);

  nlohmann::json body = {
      {"model", params.model},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", std::string(prompt)}}})},
      {"temperature", params.temperature},
      {"max_tokens", params.max_tokens},
      {"seed", params.seed},
  };
  const std::string payload = body.dump();
  httplib::Headers headers = {{"Authorization", std::string("Bearer ") + credential}};

  std::string last_failure;
  bool last_was_rate_limit = false;
  auto backoff = endpoint.initial_backoff;
  for (int attempt = 1; attempt <= std::max(1, endpoint.max_attempts); ++attempt) {
    if (attempt > 1) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    httplib::Client client(url.scheme_host_port);
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(endpoint.request_timeout).count();
    client.set_connection_timeout(std::max<long long>(1, secs), 0);
    client.set_read_timeout(std::max<long long>(1, secs), 0);
    auto res = client.Post(url.path, headers, payload, "application/json");
    if (!res) {
      last_failure = "transport failure: " + httplib::to_string(res.error());
      last_was_rate_limit = false;
      continue;
    }
    if (res->status == 401 || res->status == 403) {
      throw AuthError("service rejected credentials (HTTP " + std::to_string(res->status) + ")");
    }
    if (res->status == 429 || res->status >= 500) {
      last_failure = "HTTP " + std::to_string(res->status);
      last_was_rate_limit = res->status == 429;
      continue;
    }
    if (res->status != 200) {
      throw ServiceError("service returned HTTP " + std::to_string(res->status) + ": " + res->body);
    }
    try {
      auto reply = nlohmann::json::parse(res->body);
      return reply.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw ServiceError(std::string("unexpected completion body: ") + e.what());
    }
  }
  if (last_was_rate_limit) throw RateLimitError("rate limited after retries: " + last_failure);
  throw TransportError("giving up after " + std::to_string(endpoint.max_attempts) + " attempts: " + last_failure);
}

// ---------------------------------------------------------------------------
// Sanitizing

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return lines;
}

bool is_fence(std::string_view line) {
  std::size_t first = line.find_first_not_of(" \t");
  return first != std::string_view::npos && line.substr(first, 3) == "```";
}

bool is_blank(std::string_view line) { return line.find_first_not_of(" \t\r") == std::string_view::npos; }

}  // namespace

std::string sanitize_response(std::string_view raw) {
  auto lines = split_lines(raw);
  std::size_t begin = 0, end = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!is_fence(lines[i])) continue;
    begin = i + 1;
    end = begin;
    while (end < lines.size() && !is_fence(lines[end])) ++end;
    break;
  }
  while (begin < end && is_blank(lines[begin])) ++begin;
  while (end > begin && is_blank(lines[end - 1])) --end;
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) out += '\n';
    out += lines[i];
  }
  if (out.empty()) throw EmptyRefactoring("response contained no code");
  return out;
}

// ---------------------------------------------------------------------------
// Sources

OfflineRefactorings::OfflineRefactorings(std::vector<RefactoringRecord> records) {
  for (auto& r : records) {
    auto key = std::tuple{r.problem_id, r.model, r.refactor_type};
    if (!records_.emplace(key, std::move(r)).second) {
      throw CorpusError("duplicate refactoring for (" + std::get<0>(key) + ", " + std::get<1>(key) + ", " +
                        std::string(to_string(std::get<2>(key))) + ")");
    }
  }
}

std::vector<std::string> OfflineRefactorings::models() const {
  std::vector<std::string> out;
  for (const auto& [key, _] : records_) {
    if (std::find(out.begin(), out.end(), std::get<1>(key)) == out.end()) out.push_back(std::get<1>(key));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<RefactoringRecord> OfflineRefactorings::fetch(const ProblemRecord& problem, const std::string& model,
                                                            RefactorType type) const {
  auto it = records_.find(std::tuple{problem.id, model, type});
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

ServiceRefactorings::ServiceRefactorings(ServiceEndpoint endpoint, std::vector<GenerationParams> per_model)
    : endpoint_(std::move(endpoint)), params_(std::move(per_model)) {}

std::vector<std::string> ServiceRefactorings::models() const {
  std::vector<std::string> out;
  for (const auto& p : params_) out.push_back(p.model);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<RefactoringRecord> ServiceRefactorings::fetch(const ProblemRecord& problem, const std::string& model,
                                                            RefactorType type) const {
  auto it = std::find_if(params_.begin(), params_.end(), [&](const auto& p) { return p.model == model; });
  if (it == params_.end()) return std::nullopt;
  std::string raw;
  try {
    raw = request_refactoring(render_prompt(type, problem.reference_source), *it, endpoint_);
  } catch (const AuthError&) {
    throw;
  } catch (const ServiceError&) {
    return std::nullopt;
  }
  RefactoringRecord record{problem.id, model, type, {}, RefactorOrigin::kService};
  try {
    record.source = sanitize_response(raw);
  } catch (const EmptyRefactoring&) {
    record.source.clear();
  }
  return record;
}

}  // namespace eqfuzz
