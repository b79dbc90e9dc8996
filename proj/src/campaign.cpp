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

#include "eqfuzz/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <set>
#include <thread>

#include "eqfuzz/errors.hpp"

namespace eqfuzz {

namespace {

double percent(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string_view status_name(const PairResult& p) {
  switch (p.state) {
    case CellState::kMissing: return "missing";
    case CellState::kError: return "error";
    case CellState::kEvaluated: return to_string(p.verdict.status);
  }
  return "?";
}

bool analyzed(const PairResult& p) {
  return p.state == CellState::kEvaluated && (p.verdict.status == VerdictStatus::kEquivalent ||
                                              p.verdict.status == VerdictStatus::kNonEquivalent);
}

}  // namespace

double Table2Cell::pct_noneq() const { return percent(n_noneq, n_analyzed); }

double Table3Row::pct_of_noneq() const { return percent(n_noneq_with_corr1, n_noneq); }

void Table2Cell::add(const PairResult& pair) {
  ++n_attempted;
  if (pair.state == CellState::kMissing) {
    ++missing;
  } else if (pair.state == CellState::kError) {
    ++error;
  } else {
    switch (pair.verdict.status) {
      case VerdictStatus::kEquivalent:
        ++n_analyzed;
        break;
      case VerdictStatus::kNonEquivalent:
        ++n_analyzed;
        ++n_noneq;
        break;
      case VerdictStatus::kExcludedTimeout:
        ++excluded_timeout;
        break;
      case VerdictStatus::kExcludedNonExecutable:
        ++excluded_non_executable;
        break;
    }
  }
}

bool CampaignReport::has_errors() const {
  auto it = exclusions.find("error");
  return it != exclusions.end() && it->second > 0;
}

// ---------------------------------------------------------------------------
// Running

namespace {

ExecTarget make_target(std::string source, const ProblemRecord& problem, const CampaignConfig& cfg) {
  ExecTarget t;
  t.source = std::move(source);
  t.level = problem.level;
  t.entry_point = problem.entry_point;
  t.runtime_command = problem.level == Level::kFunction ? cfg.function_command : cfg.program_command;
  t.check_command = cfg.check_command;
  return t;
}

PairResult evaluate_cell(const ProblemRecord& problem, const std::string& model, RefactorType type,
                         const RefactoringSource& source, const Executor& executor, const CampaignConfig& cfg) {
  PairResult pair;
  pair.problem_id = problem.id;
  pair.model = model;
  pair.refactor_type = type;
  pair.dataset = problem.dataset;
  auto start = std::chrono::steady_clock::now();
  try {
    std::optional<RefactoringRecord> record = source.fetch(problem, model, type);
    if (!record) {
      pair.state = CellState::kMissing;
      return pair;
    }
    ExecTarget original = make_target(problem.reference_source, problem, cfg);
    ExecTarget refactored = make_target(record->source, problem, cfg);

    CheckConfig check;
    check.gen.seed = cfg.seed;
    check.gen.n = problem.level == Level::kFunction ? cfg.n_function : cfg.n_program;
    check.gen.max_rejections = cfg.max_rejections;
    check.policy = cfg.policy;
    check.compare = cfg.compare;
    check.mode = ScanMode::kFullScan;
    check.problem_id = problem.id;
    check.workers = 1;
    pair.verdict = check_equivalence(executor, original, refactored, problem.schema, check);
    pair.suite = check_test_suite(executor, refactored, problem.tests, cfg.policy, cfg.compare);
  } catch (const AuthError&) {
    throw;
  } catch (const Error& e) {
    pair.state = CellState::kError;
    pair.error = e.what();
  }
  pair.elapsed = std::chrono::steady_clock::now() - start;
  return pair;
}

}  // namespace

CampaignResult run_campaign(std::span<const ProblemRecord> problems, const RefactoringSource& source,
                            const Executor& executor, const CampaignConfig& cfg) {
  std::vector<std::string> models = source.models();
  std::vector<std::string> datasets;
  for (const auto& p : problems) {
    if (std::find(datasets.begin(), datasets.end(), p.dataset) == datasets.end()) datasets.push_back(p.dataset);
  }

  struct Cell {
    const ProblemRecord* problem;
    const std::string* model;
    RefactorType type;
  };
  std::vector<Cell> cells;
  for (const auto& p : problems) {
    for (const auto& m : models) {
      for (RefactorType t : kAllRefactorTypes) cells.push_back({&p, &m, t});
    }
  }

  std::vector<PairResult> results(cells.size());
  std::vector<std::exception_ptr> failures(cells.size());
  auto work = [&](std::size_t i) {
    try {
      results[i] = evaluate_cell(*cells[i].problem, *cells[i].model, cells[i].type, source, executor, cfg);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  };
  std::size_t workers = std::max<std::size_t>(1, std::min(cfg.workers, cells.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) work(i);
      });
    }
  }
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  CampaignResult out;
  out.report = build_report(results, models, datasets, cfg);
  out.pairs = std::move(results);
  return out;
}

std::map<std::string, Table3Row> count_divergence(std::span<const PairResult> results) {
  std::map<std::string, Table3Row> rows;
  for (const auto& p : results) {
    Table3Row& row = rows[p.dataset];
    if (!analyzed(p)) continue;
    ++row.n_total_analyzed;
    if (p.verdict.status == VerdictStatus::kNonEquivalent) {
      ++row.n_noneq;
      if (p.suite.corr_bit == 1) ++row.n_noneq_with_corr1;
    }
  }
  return rows;
}

CampaignReport build_report(std::span<const PairResult> pairs, std::span<const std::string> models,
                            std::span<const std::string> datasets, const CampaignConfig& cfg) {
  CampaignReport report;
  auto& h = report.header;
  h["seed"] = Value(BigInt(cfg.seed));
  h["n_function"] = static_cast<std::int64_t>(cfg.n_function);
  h["n_program"] = static_cast<std::int64_t>(cfg.n_program);
  h["max_rejections"] = static_cast<std::int64_t>(cfg.max_rejections);
  h["timeout_ms"] = static_cast<std::int64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(cfg.policy.per_run_timeout).count());
  h["max_output_bytes"] = static_cast<std::int64_t>(cfg.policy.max_output_bytes);
  h["float_rel_tol"] = cfg.compare.float_rel_tol;
  h["float_abs_tol"] = cfg.compare.float_abs_tol;
  h["program_output_normalization"] = std::string(to_string(cfg.compare.program_output_normalization));
  h["scan_mode"] = std::string(to_string(ScanMode::kFullScan));
  h["discard_cap"] = "n/10";
  h["error_equality"] = "class_name";
  h["numeric_equality"] = "type_strict";
  h["set_serialization"] = "sorted";
  List generation;
  for (const auto& g : cfg.generation) {
    generation.push_back(Value::map({{"model", g.model},
                                     {"temperature", g.temperature},
                                     {"max_tokens", g.max_tokens},
                                     {"seed", Value(BigInt(g.seed))}}));
  }
  h["generation"] = Value(std::move(generation));

  for (const auto& m : models) {
    report.overall[m];
    for (RefactorType t : kAllRefactorTypes) {
      for (const auto& d : datasets) report.table2[{m, std::string(to_string(t)), d}];
    }
  }
  for (const auto& d : datasets) report.table3[d];
  for (const char* reason : {"timeout", "non_executable", "missing", "error"}) report.exclusions[reason] = 0;

  for (const auto& p : pairs) {
    report.table2[{p.model, std::string(to_string(p.refactor_type)), p.dataset}].add(p);
    report.overall[p.model].add(p);
    if (p.state == CellState::kMissing) {
      ++report.exclusions["missing"];
    } else if (p.state == CellState::kError) {
      ++report.exclusions["error"];
    } else if (p.verdict.status == VerdictStatus::kExcludedTimeout) {
      ++report.exclusions["timeout"];
    } else if (p.verdict.status == VerdictStatus::kExcludedNonExecutable) {
      ++report.exclusions["non_executable"];
    }

    PairSummary s;
    s.problem_id = p.problem_id;
    s.model = p.model;
    s.refactor_type = std::string(to_string(p.refactor_type));
    s.dataset = p.dataset;
    s.status = std::string(status_name(p));
    s.error = p.error;
    if (p.state == CellState::kEvaluated) {
      if (p.verdict.eq_bit) s.eq_bit = *p.verdict.eq_bit;
      s.similarity = p.verdict.similarity;
      if (p.verdict.witness) s.witness_index = static_cast<std::int64_t>(p.verdict.witness->input.index);
      s.n_compared = static_cast<std::int64_t>(p.verdict.n_compared);
      s.n_discarded = static_cast<std::int64_t>(p.verdict.n_discarded);
      s.corr_bit = p.suite.corr_bit;
      if (p.suite.first_failure) s.first_failure = static_cast<std::int64_t>(*p.suite.first_failure);
    }
    report.pairs.push_back(std::move(s));
  }
  for (auto& [dataset, row] : count_divergence(pairs)) report.table3[dataset] = row;
  return report;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

Value opt(const std::optional<std::int64_t>& v) { return v ? Value(*v) : Value(); }
Value opt(const std::optional<double>& v) { return v ? Value(*v) : Value(); }
Value count(std::size_t v) { return Value(static_cast<std::int64_t>(v)); }

Entries cell_entries(const Table2Cell& c) {
  return {{"n_attempted", count(c.n_attempted)},
          {"n_analyzed", count(c.n_analyzed)},
          {"n_noneq", count(c.n_noneq)},
          {"pct_noneq", c.pct_noneq()},
          {"excluded_timeout", count(c.excluded_timeout)},
          {"excluded_non_executable", count(c.excluded_non_executable)},
          {"missing", count(c.missing)},
          {"error", count(c.error)}};
}

const Value& field(const Value& obj, std::string_view key) {
  const Value* v = obj.find(key);
  if (v == nullptr) throw ParseError("report lacks \"" + std::string(key) + "\"");
  return *v;
}

std::size_t get_count(const Value& obj, std::string_view key) {
  auto v = field(obj, key).to_int64();
  if (!v || *v < 0) throw ParseError("report field \"" + std::string(key) + "\" is not a count");
  return static_cast<std::size_t>(*v);
}

const std::string& get_string(const Value& obj, std::string_view key) {
  const Value& v = field(obj, key);
  if (!v.is_string()) throw ParseError("report field \"" + std::string(key) + "\" is not a string");
  return v.as_string();
}

std::optional<std::int64_t> get_opt_int(const Value& obj, std::string_view key) {
  const Value& v = field(obj, key);
  if (v.is_null()) return std::nullopt;
  return v.to_int64();
}

Table2Cell cell_from(const Value& v) {
  Table2Cell c;
  c.n_attempted = get_count(v, "n_attempted");
  c.n_analyzed = get_count(v, "n_analyzed");
  c.n_noneq = get_count(v, "n_noneq");
  c.excluded_timeout = get_count(v, "excluded_timeout");
  c.excluded_non_executable = get_count(v, "excluded_non_executable");
  c.missing = get_count(v, "missing");
  c.error = get_count(v, "error");
  return c;
}

}  // namespace

Value report_to_value(const CampaignReport& r) {
  Entries header(r.header.begin(), r.header.end());
  List table2;
  for (const auto& [key, cell] : r.table2) {
    Entries e = cell_entries(cell);
    e.emplace_back("model", std::get<0>(key));
    e.emplace_back("refactor_type", std::get<1>(key));
    e.emplace_back("dataset", std::get<2>(key));
    table2.push_back(Value::map(std::move(e)));
  }
  List overall;
  for (const auto& [model, cell] : r.overall) {
    Entries e = cell_entries(cell);
    e.emplace_back("model", model);
    overall.push_back(Value::map(std::move(e)));
  }
  List table3;
  for (const auto& [dataset, row] : r.table3) {
    table3.push_back(Value::map({{"dataset", dataset},
                                 {"n_total_analyzed", count(row.n_total_analyzed)},
                                 {"n_noneq", count(row.n_noneq)},
                                 {"n_noneq_with_corr1", count(row.n_noneq_with_corr1)},
                                 {"pct_of_noneq", row.pct_of_noneq()}}));
  }
  Entries exclusions;
  for (const auto& [reason, n] : r.exclusions) exclusions.emplace_back(reason, count(n));
  List pairs;
  for (const auto& p : r.pairs) {
    pairs.push_back(Value::map({{"problem_id", p.problem_id},
                                {"model", p.model},
                                {"refactor_type", p.refactor_type},
                                {"dataset", p.dataset},
                                {"status", p.status},
                                {"eq_bit", opt(p.eq_bit)},
                                {"similarity", opt(p.similarity)},
                                {"witness_index", opt(p.witness_index)},
                                {"n_compared", Value(p.n_compared)},
                                {"n_discarded", Value(p.n_discarded)},
                                {"corr_bit", opt(p.corr_bit)},
                                {"first_failure", opt(p.first_failure)},
                                {"error", p.error}}));
  }
  return Value::map({{"header", Value::map(std::move(header))},
                     {"table2", Value(std::move(table2))},
                     {"overall", Value(std::move(overall))},
                     {"table3", Value(std::move(table3))},
                     {"exclusions", Value::map(std::move(exclusions))},
                     {"pairs", Value(std::move(pairs))}});
}

CampaignReport report_from_value(const Value& v) {
  CampaignReport r;
  for (const auto& [k, val] : field(v, "header").as_map()) r.header[k] = val;
  for (const Value& row : field(v, "table2").as_list()) {
    r.table2[{get_string(row, "model"), get_string(row, "refactor_type"), get_string(row, "dataset")}] =
        cell_from(row);
  }
  for (const Value& row : field(v, "overall").as_list()) r.overall[get_string(row, "model")] = cell_from(row);
  for (const Value& row : field(v, "table3").as_list()) {
    r.table3[get_string(row, "dataset")] = Table3Row{get_count(row, "n_total_analyzed"), get_count(row, "n_noneq"),
                                                     get_count(row, "n_noneq_with_corr1")};
  }
  for (const auto& [k, val] : field(v, "exclusions").as_map()) {
    auto n = val.to_int64();
    if (!n || *n < 0) throw ParseError("bad exclusion count for " + k);
    r.exclusions[k] = static_cast<std::size_t>(*n);
  }
  for (const Value& p : field(v, "pairs").as_list()) {
    PairSummary s;
    s.problem_id = get_string(p, "problem_id");
    s.model = get_string(p, "model");
    s.refactor_type = get_string(p, "refactor_type");
    s.dataset = get_string(p, "dataset");
    s.status = get_string(p, "status");
    s.eq_bit = get_opt_int(p, "eq_bit");
    const Value& sim = field(p, "similarity");
    if (sim.is_float()) s.similarity = sim.as_float();
    s.witness_index = get_opt_int(p, "witness_index");
    s.n_compared = get_opt_int(p, "n_compared").value_or(0);
    s.n_discarded = get_opt_int(p, "n_discarded").value_or(0);
    s.corr_bit = get_opt_int(p, "corr_bit");
    s.first_failure = get_opt_int(p, "first_failure");
    s.error = get_string(p, "error");
    r.pairs.push_back(std::move(s));
  }
  return r;
}

std::string report_to_csv(const CampaignReport& r) {
  std::string out;
  for (const auto& [k, v] : r.header) out += "# " + k + "=" + to_text(v) + "\n";
  out +=
      "table,model,refactor_type,dataset,n_attempted,n_analyzed,n_noneq,pct_noneq,n_noneq_with_corr1,"
      "pct_of_noneq,excluded_timeout,excluded_non_executable,missing,error\n";
  auto cell_row = [&](std::string_view table, std::string_view model, std::string_view type,
                      std::string_view dataset, const Table2Cell& c) {
    out += std::string(table) + "," + std::string(model) + "," + std::string(type) + "," + std::string(dataset) +
           "," + std::to_string(c.n_attempted) + "," + std::to_string(c.n_analyzed) + "," +
           std::to_string(c.n_noneq) + "," + fixed2(c.pct_noneq()) + ",,," + std::to_string(c.excluded_timeout) +
           "," + std::to_string(c.excluded_non_executable) + "," + std::to_string(c.missing) + "," +
           std::to_string(c.error) + "\n";
  };
  for (const auto& [key, cell] : r.table2) {
    cell_row("table2", std::get<0>(key), std::get<1>(key), std::get<2>(key), cell);
  }
  for (const auto& [model, cell] : r.overall) cell_row("overall", model, "", "", cell);
  for (const auto& [dataset, row] : r.table3) {
    out += "table3,,," + dataset + ",," + std::to_string(row.n_total_analyzed) + "," + std::to_string(row.n_noneq) +
           ",," + std::to_string(row.n_noneq_with_corr1) + "," + fixed2(row.pct_of_noneq()) + ",,,,\n";
  }
  return out;
}

std::string report_to_text(const CampaignReport& r) {
  std::set<std::string> datasets;
  for (const auto& [key, _] : r.table2) datasets.insert(std::get<2>(key));
  std::string out = "Non-equivalent refactorings (% of analyzed)\n";
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-16s %-15s", "Model", "Refactoring");
  out += buf;
  for (const auto& d : datasets) {
    std::snprintf(buf, sizeof buf, " %12s", d.c_str());
    out += buf;
  }
  out += "      Overall\n";
  for (const auto& [model, overall] : r.overall) {
    bool first = true;
    for (RefactorType t : kAllRefactorTypes) {
      std::snprintf(buf, sizeof buf, "%-16s %-15s", first ? model.c_str() : "",
                    std::string(to_string(t)).c_str());
      out += buf;
      for (const auto& d : datasets) {
        auto it = r.table2.find({model, std::string(to_string(t)), d});
        std::string cell = it == r.table2.end() ? "-" : fixed2(it->second.pct_noneq()) + "%";
        std::snprintf(buf, sizeof buf, " %12s", cell.c_str());
        out += buf;
      }
      if (first) {
        std::snprintf(buf, sizeof buf, " %12s", (fixed2(overall.pct_noneq()) + "%").c_str());
        out += buf;
      }
      out += "\n";
      first = false;
    }
  }
  out += "\nTest passing vs differential fuzzing\n";
  std::snprintf(buf, sizeof buf, "%-16s %8s %10s %26s\n", "Dataset", "# Total", "# Non-eq.",
                "# Non-eq. with Corr@Test=1");
  out += buf;
  for (const auto& [dataset, row] : r.table3) {
    std::string div = std::to_string(row.n_noneq_with_corr1) + " (" + fixed2(row.pct_of_noneq()) + "%)";
    std::snprintf(buf, sizeof buf, "%-16s %8zu %10zu %26s\n", dataset.c_str(), row.n_total_analyzed, row.n_noneq,
                  div.c_str());
    out += buf;
  }
  out += "\nExclusions:";
  for (const auto& [reason, n] : r.exclusions) out += " " + reason + "=" + std::to_string(n);
  out += "\n";
  return out;
}

std::filesystem::path write_report(const CampaignReport& report, ReportFormat format,
                                   const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::filesystem::path path = dir / (format == ReportFormat::kStructured ? "report.json" : "report.csv");
  std::string content =
      format == ReportFormat::kStructured ? to_pretty_text(report_to_value(report)) + "\n" : report_to_csv(report);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + path.string());
  f << content;
  f.close();
  if (!f) throw IoError("cannot write " + path.string());
  return path;
}

CampaignReport read_report(const std::filesystem::path& path) {
  return report_from_value(parse_value(read_file(path)));
}

}  // namespace eqfuzz
