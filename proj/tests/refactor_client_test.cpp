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

#include <atomic>
#include <cstdlib>
#include <thread>

#define CPPHTTPLIB_OPENSSL_SUPPORT  // must match the library's build of httplib
#include <httplib.h>
#include <nlohmann/json.hpp>

#include <gtest/gtest.h>

#include "eqfuzz/errors.hpp"
#include "eqfuzz/refactor_client.hpp"
#include "mini_fixture.hpp"

namespace eqfuzz {
namespace {

using namespace std::chrono_literals;

TEST(RenderPrompt, OptimizationMatchesFigureText) {
  std::string p = render_prompt(RefactorType::kOptimization, "def f(): ...");
  EXPECT_EQ(p,
            "Task: Optimize the following Python program/function so that it runs faster.\n"
            "Instructions:\n"
            "- Output ONLY valid Python code.\n"
            "- Do NOT include any explanations, comments, markdown, examples, or extra text.\n"
            "- If you cannot safely optimize, output the original program/function unchanged.\n"
            "Python program/function:\n"
            "def f(): ...");
}

TEST(RenderPrompt, SimplificationCarriesItsClauses) {
  std::string p = render_prompt(RefactorType::kSimplification, "def f(): ...");
  EXPECT_EQ(p.rfind("Task: Simplify the following Python program/function", 0), 0u);
  EXPECT_NE(p.find("removing redundancy and making it more concise"), std::string::npos);
  EXPECT_NE(p.find("If you cannot safely simplify"), std::string::npos);
  EXPECT_EQ(p.find("optimize"), std::string::npos);
}

TEST(RenderPrompt, SubstitutionIsLiteral) {
  std::string code = "x = '<Original Code>' + \"{}\" + '\\n' + '$1'";
  for (RefactorType t : kAllRefactorTypes) {
    std::string p = render_prompt(t, code);
    EXPECT_EQ(p.substr(p.size() - code.size()), code);
    EXPECT_NE(render_prompt(t, code + " "), p);
    EXPECT_THROW(render_prompt(t, ""), InvalidArgument);
  }
  EXPECT_EQ(prompt_template(RefactorType::kOptimization).refactor_type, RefactorType::kOptimization);
}

TEST(SanitizeResponse, Rules) {
  EXPECT_EQ(sanitize_response("```\ndef f(): return 1\n```"), "def f(): return 1");
  EXPECT_EQ(sanitize_response("```python\nA\n```\n```\nB\n```"), "A");
  EXPECT_EQ(sanitize_response("Here is the code:\n```\nX\n```\nHope this helps"), "X");
  EXPECT_EQ(sanitize_response("\n\ndef f():\n\n    return 1\n\n"), "def f():\n\n    return 1");
  EXPECT_EQ(sanitize_response("  x = 1  "), "  x = 1  ");  // interior content untouched
  EXPECT_THROW(sanitize_response(""), EmptyRefactoring);
  EXPECT_THROW(sanitize_response("```\n\n```"), EmptyRefactoring);
}

TEST(SanitizeResponse, Idempotent) {
  const char* samples[] = {"```\nX\n```", "a\n```\n\nb\nc\n\n```\nd", "\n plain \n", "```py\nunterminated\n",
                           "x\n``` \ny\n```", "\t\n  y\n"};
  for (const char* s : samples) {
    std::string once = sanitize_response(s);
    EXPECT_EQ(sanitize_response(once), once) << s;
  }
}

// Loopback chat-completions stand-in.
class MockService : public ::testing::Test {
 protected:
  void SetUp() override {
    ::setenv("EQFUZZ_TEST_KEY", "sekrit", 1);
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      int n = ++hits_;
      last_body_ = req.body;
      last_auth_ = req.get_header_value("Authorization");
      int status = n <= static_cast<int>(script_.size()) ? script_[n - 1] : 200;
      res.status = status;
      if (status == 200) {
        nlohmann::json reply = {{"choices", {{{"message", {{"role", "assistant"}, {"content", completion_}}}}}}};
        res.set_content(reply.dump(), "application/json");
      } else {
        res.set_content("{}", "application/json");
      }
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
    ::unsetenv("EQFUZZ_TEST_KEY");
  }

  ServiceEndpoint endpoint() const {
    ServiceEndpoint e;
    e.base_url = "http://127.0.0.1:" + std::to_string(port_) + "/v1";
    e.credential_env = "EQFUZZ_TEST_KEY";
    e.request_timeout = 5000ms;
    e.initial_backoff = 10ms;
    return e;
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> hits_{0};
  std::vector<int> script_;
  std::string completion_ = "```python\ndef f(x):\n    return x\n```";
  std::string last_body_, last_auth_;
};

TEST_F(MockService, EchoesCompletionVerbatim) {
  GenerationParams params{"mock-model", 0.0, 256, 7};
  EXPECT_EQ(request_refactoring("prompt text", params, endpoint()), completion_);
  EXPECT_EQ(hits_, 1);
  EXPECT_EQ(last_auth_, "Bearer sekrit");
  auto body = nlohmann::json::parse(last_body_);
  EXPECT_EQ(body["model"], "mock-model");
  EXPECT_EQ(body["messages"].size(), 1u);
  EXPECT_EQ(body["messages"][0]["role"], "user");
  EXPECT_EQ(body["messages"][0]["content"], "prompt text");
  EXPECT_EQ(body["seed"], 7);
  EXPECT_EQ(body["max_tokens"], 256);
}

TEST_F(MockService, RetriesTransientFailures) {
  script_ = {503, 500};
  EXPECT_EQ(request_refactoring("p", GenerationParams{"m"}, endpoint()), completion_);
  EXPECT_EQ(hits_, 3);
}

TEST_F(MockService, RateLimitExhausted) {
  script_ = {429, 429, 429};
  EXPECT_THROW(request_refactoring("p", GenerationParams{"m"}, endpoint()), RateLimitError);
  EXPECT_EQ(hits_, 3);
}

TEST_F(MockService, AuthFailureIsNotRetried) {
  script_ = {401};
  EXPECT_THROW(request_refactoring("p", GenerationParams{"m"}, endpoint()), AuthError);
  EXPECT_EQ(hits_, 1);
}

TEST_F(MockService, MissingCredentialFailsBeforeTheNetwork) {
  ::unsetenv("EQFUZZ_TEST_KEY");
  EXPECT_THROW(request_refactoring("p", GenerationParams{"m"}, endpoint()), AuthError);
  EXPECT_EQ(hits_, 0);
}

TEST_F(MockService, ClientErrorsAreNotRetried) {
  script_ = {400};
  EXPECT_THROW(request_refactoring("p", GenerationParams{"m"}, endpoint()), ServiceError);
  EXPECT_EQ(hits_, 1);
}

TEST_F(MockService, UnreachableEndpointIsTransportError) {
  ServiceEndpoint e = endpoint();
  e.base_url = "http://127.0.0.1:1/v1";
  EXPECT_THROW(request_refactoring("p", GenerationParams{"m"}, e), TransportError);
}

TEST_F(MockService, ServiceAndOfflineRecordsMatch) {
  auto problems = testing::mini_corpus();
  const ProblemRecord& p = problems[0];
  ServiceRefactorings service(endpoint(), {GenerationParams{"mock-model"}});
  EXPECT_EQ(service.models(), std::vector<std::string>{"mock-model"});
  auto fetched = service.fetch(p, "mock-model", RefactorType::kSimplification);
  ASSERT_TRUE(fetched);
  EXPECT_EQ(fetched->source, "def f(x):\n    return x");
  EXPECT_EQ(fetched->origin, RefactorOrigin::kService);
  EXPECT_NE(nlohmann::json::parse(last_body_)["messages"][0]["content"].get<std::string>().find(p.reference_source),
            std::string::npos);
  EXPECT_FALSE(service.fetch(p, "other-model", RefactorType::kSimplification));

  RefactoringRecord copy = *fetched;
  copy.origin = RefactorOrigin::kOfflineFile;
  OfflineRefactorings offline({copy});
  auto loaded = offline.fetch(p, "mock-model", RefactorType::kSimplification);
  ASSERT_TRUE(loaded);
  EXPECT_EQ(loaded->source, fetched->source);
  EXPECT_FALSE(offline.fetch(p, "mock-model", RefactorType::kOptimization));
}

TEST_F(MockService, EmptyGenerationBecomesEmptySource) {
  completion_ = "```\n```";
  ServiceRefactorings service(endpoint(), {GenerationParams{"mock-model"}});
  auto fetched = service.fetch(testing::mini_corpus()[0], "mock-model", RefactorType::kOptimization);
  ASSERT_TRUE(fetched);
  EXPECT_TRUE(fetched->source.empty());
}

TEST_F(MockService, ServiceFailureMeansNoRecordButAuthPropagates) {
  script_ = {500, 500, 500};
  ServiceRefactorings service(endpoint(), {GenerationParams{"mock-model"}});
  auto problem = testing::mini_corpus()[0];
  EXPECT_FALSE(service.fetch(problem, "mock-model", RefactorType::kOptimization));
  script_.assign(10, 403);
  EXPECT_THROW(service.fetch(problem, "mock-model", RefactorType::kOptimization), AuthError);
}

TEST(OfflineRefactorings, DuplicateKeysRejected) {
  RefactoringRecord r{"p", "m", RefactorType::kOptimization, "x", RefactorOrigin::kOfflineFile};
  EXPECT_THROW(OfflineRefactorings({r, r}), CorpusError);
  auto models = OfflineRefactorings(testing::mini_refactorings()).models();
  EXPECT_EQ(models, std::vector<std::string>{"mini-model"});
}

}  // namespace
}  // namespace eqfuzz
