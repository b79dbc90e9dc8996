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

// eqfuzz command line: gen-inputs, check, campaign, report.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eqfuzz/campaign.hpp"
#include "eqfuzz/corpus.hpp"
#include "eqfuzz/errors.hpp"
#include "eqfuzz/exec.hpp"
#include "eqfuzz/input_gen.hpp"
#include "eqfuzz/refactor_client.hpp"
#include "eqfuzz/verdict.hpp"

namespace {

using namespace eqfuzz;

constexpr int kExitEquivalent = 0;
constexpr int kExitNonEquivalent = 1;
constexpr int kExitExcluded = 2;
constexpr int kExitHarnessError = 3;

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::chrono::nanoseconds seconds(double s) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::duration<double>(s));
}

struct RuntimeOptions {
  std::string function_runtime = "python3 {adapter} {source} {entry_point}";
  std::string program_runtime = "python3 {source}";
  std::string check_command = "python3 -m py_compile {source}";
  std::string adapter = "target_adapter.py";
  double timeout = 5.0;

  void add_to(CLI::App* app) {
    app->add_option("--function-runtime", function_runtime, "Command template for function-level targets");
    app->add_option("--program-runtime", program_runtime, "Command template for program-level targets");
    app->add_option("--check-command", check_command, "Syntax/load check run once per target ('' disables)");
    app->add_option("--adapter", adapter, "Adapter path substituted for {adapter}");
    app->add_option("--timeout", timeout, "Per-run wall-clock timeout in seconds")->check(CLI::PositiveNumber);
  }
};

int run_gen_inputs(const std::string& corpus, const std::string& problem_id, std::uint64_t seed,
                   std::optional<std::size_t> n) {
  auto records = load_corpus(corpus);
  auto it = std::find_if(records.begin(), records.end(), [&](const auto& r) { return r.id == problem_id; });
  if (it == records.end()) throw InvalidArgument("no problem \"" + problem_id + "\" in " + corpus);
  GenConfig cfg = GenConfig::defaults_for(it->level, seed);
  if (n) cfg.n = *n;
  for (const auto& input : generate_inputs(it->schema, cfg, problem_id)) {
    Entries e{{"index", static_cast<std::int64_t>(input.index)}, {"values", Value(List(input.values))}};
    if (input.rendered) e.emplace_back("rendered", *input.rendered);
    std::cout << to_text(Value::map(std::move(e))) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differential-fuzzing equivalence checker for refactorings"};
  app.require_subcommand(1);

  // gen-inputs
  auto* gen = app.add_subcommand("gen-inputs", "Print the generated input set for one corpus problem");
  std::string gen_corpus, gen_problem;
  std::uint64_t gen_seed = 0;
  std::optional<std::size_t> gen_n;
  gen->add_option("--corpus", gen_corpus, "Corpus file")->required()->check(CLI::ExistingFile);
  gen->add_option("--problem-id", gen_problem, "Problem id")->required();
  gen->add_option("--seed", gen_seed, "Generation seed");
  gen->add_option("--n", gen_n, "Input count (default 2000 function / 1000 program)");

  // check
  auto* check = app.add_subcommand("check", "Decide equivalence of one original/refactored pair");
  std::string original_path, refactored_path, schema_path, level_name = "function", mode_name = "early_exit";
  std::string entry_point, problem_id = "check";
  std::uint64_t check_seed = 0;
  std::optional<std::size_t> check_n;
  double rel_tol = 1e-6;
  std::size_t check_workers = 1;
  RuntimeOptions check_rt;
  check->add_option("--original", original_path, "Original source file")->required()->check(CLI::ExistingFile);
  check->add_option("--refactored", refactored_path, "Refactored source file")->required()->check(CLI::ExistingFile);
  check->add_option("--schema", schema_path, "Input schema file")->required()->check(CLI::ExistingFile);
  check->add_option("--seed", check_seed, "Generation seed");
  check->add_option("--n", check_n, "Input count (default by level)");
  check->add_option("--mode", mode_name, "early_exit or full_scan")
      ->check(CLI::IsMember({"early_exit", "full_scan"}));
  check->add_option("--float-rel-tol", rel_tol, "Relative float tolerance")->check(CLI::NonNegativeNumber);
  check->add_option("--level", level_name, "function or program")->check(CLI::IsMember({"function", "program"}));
  check->add_option("--entry-point", entry_point, "Entry point (function level)");
  check->add_option("--problem-id", problem_id, "Key for the input streams");
  check->add_option("--workers", check_workers, "Parallel runs")->check(CLI::PositiveNumber);
  check_rt.add_to(check);

  // campaign
  auto* campaign = app.add_subcommand("campaign", "Evaluate corpora x models x refactoring types");
  std::vector<std::string> corpora, models;
  std::string refactorings_path, endpoint_url, credential_env = "EQFUZZ_API_KEY", out_dir = "eqfuzz-out";
  std::uint64_t campaign_seed = 0, gen_params_seed = 0;
  std::size_t workers = 1;
  std::optional<std::size_t> sample_k, n_function, n_program;
  std::uint64_t sample_seed = 0;
  double temperature = 0.0;
  std::int64_t max_tokens = 2048;
  RuntimeOptions campaign_rt;
  campaign->add_option("--corpus", corpora, "Corpus file (repeatable)")->required()->check(CLI::ExistingFile);
  auto* offline = campaign->add_option("--refactorings", refactorings_path, "Offline refactorings file")
                      ->check(CLI::ExistingFile);
  auto* endpoint = campaign->add_option("--endpoint", endpoint_url, "Chat-completions base URL");
  campaign->add_option("--models", models, "Model names for --endpoint")->delimiter(',');
  campaign->add_option("--credential-env", credential_env, "Environment variable holding the API key");
  campaign->add_option("--temperature", temperature, "Decoding temperature");
  campaign->add_option("--max-tokens", max_tokens, "Completion token cap");
  campaign->add_option("--generation-seed", gen_params_seed, "Decoding seed sent to the service");
  campaign->add_option("--seed", campaign_seed, "Input generation seed");
  campaign->add_option("--workers", workers, "Parallel cells")->check(CLI::PositiveNumber);
  campaign->add_option("--out-dir", out_dir, "Directory for report.json and report.csv");
  campaign->add_option("--sample", sample_k, "Sample this many problems from each corpus");
  campaign->add_option("--sample-seed", sample_seed, "Seed for --sample");
  campaign->add_option("--n-function", n_function, "Inputs per function-level problem (default 2000)");
  campaign->add_option("--n-program", n_program, "Inputs per program-level problem (default 1000)");
  offline->excludes(endpoint);
  endpoint->excludes(offline);
  campaign_rt.add_to(campaign);

  // report
  auto* report_cmd = app.add_subcommand("report", "Render an existing structured report");
  std::string report_in, report_format = "text";
  report_cmd->add_option("--in", report_in, "report.json")->required()->check(CLI::ExistingFile);
  report_cmd->add_option("--format", report_format, "csv or text")->check(CLI::IsMember({"csv", "text"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return run_gen_inputs(gen_corpus, gen_problem, gen_seed, gen_n);

    if (*check) {
      Level level = level_name == "function" ? Level::kFunction : Level::kProgram;
      if (level == Level::kFunction && entry_point.empty()) {
        std::cerr << "check: --entry-point is required for function-level targets\n";
        return kExitHarnessError;
      }
      const std::string schema_text = read_file(schema_path);
      InputSchema schema = parse_schema(std::string_view(schema_text));
      if (level == Level::kProgram && schema_text.find("\"mode\"") == std::string::npos) {
        schema.mode = InputMode::kTextStream;
      }
      auto make = [&](const std::string& path) {
        ExecTarget t;
        t.source = read_file(path);
        t.level = level;
        if (level == Level::kFunction) t.entry_point = entry_point;
        t.runtime_command = split_words(level == Level::kFunction ? check_rt.function_runtime : check_rt.program_runtime);
        t.check_command = split_words(check_rt.check_command);
        return t;
      };
      CheckConfig cfg;
      cfg.gen = GenConfig::defaults_for(level, check_seed);
      if (check_n) cfg.gen.n = *check_n;
      cfg.policy.per_run_timeout = seconds(check_rt.timeout);
      cfg.compare.float_rel_tol = rel_tol;
      cfg.mode = *parse_scan_mode(mode_name);
      cfg.problem_id = problem_id;
      cfg.workers = check_workers;
      ProcessExecutor executor(check_rt.adapter);
      Verdict v = check_equivalence(executor, make(original_path), make(refactored_path), schema, cfg);
      std::cout << to_text(verdict_to_value(v)) << '\n';
      switch (v.status) {
        case VerdictStatus::kEquivalent: return kExitEquivalent;
        case VerdictStatus::kNonEquivalent: return kExitNonEquivalent;
        default: return kExitExcluded;
      }
    }

    if (*campaign) {
      std::vector<ProblemRecord> problems;
      for (const auto& path : corpora) {
        auto records = load_corpus(path);
        if (sample_k) records = sample_problems(records, *sample_k, sample_seed);
        for (auto& r : records) problems.push_back(std::move(r));
      }
      CampaignConfig cfg;
      cfg.seed = campaign_seed;
      if (n_function) cfg.n_function = *n_function;
      if (n_program) cfg.n_program = *n_program;
      cfg.workers = workers;
      cfg.policy.per_run_timeout = seconds(campaign_rt.timeout);
      cfg.function_command = split_words(campaign_rt.function_runtime);
      cfg.program_command = split_words(campaign_rt.program_runtime);
      cfg.check_command = split_words(campaign_rt.check_command);

      std::unique_ptr<RefactoringSource> source;
      if (!refactorings_path.empty()) {
        source = std::make_unique<OfflineRefactorings>(load_refactorings(refactorings_path));
      } else if (!endpoint_url.empty()) {
        if (models.empty()) {
          std::cerr << "campaign: --endpoint needs --models\n";
          return kExitHarnessError;
        }
        ServiceEndpoint ep;
        ep.base_url = endpoint_url;
        ep.credential_env = credential_env;
        for (const auto& m : models) cfg.generation.push_back(GenerationParams{m, temperature, max_tokens, gen_params_seed});
        source = std::make_unique<ServiceRefactorings>(ep, cfg.generation);
      } else {
        std::cerr << "campaign: need --refactorings or --endpoint\n";
        return kExitHarnessError;
      }
      ProcessExecutor executor(campaign_rt.adapter);
      CampaignResult result = run_campaign(problems, *source, executor, cfg);
      write_report(result.report, ReportFormat::kStructured, out_dir);
      write_report(result.report, ReportFormat::kCsv, out_dir);
      std::cout << report_to_text(result.report);
      for (const auto& p : result.pairs) {
        if (p.state == CellState::kError) {
          std::cerr << "error: " << p.problem_id << " / " << p.model << " / " << to_string(p.refactor_type)
                    << ": " << p.error << '\n';
        }
      }
      return result.report.has_errors() ? kExitHarnessError : 0;
    }

    if (*report_cmd) {
      CampaignReport r = read_report(report_in);
      std::cout << (report_format == "csv" ? report_to_csv(r) : report_to_text(r));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "eqfuzz: " << e.what() << '\n';
    return kExitHarnessError;
  }
  return 0;
}
