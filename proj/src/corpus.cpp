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

#include "eqfuzz/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "eqfuzz/errors.hpp"
#include "eqfuzz/random.hpp"

namespace eqfuzz {

std::string_view to_string(RefactorType type) {
  return type == RefactorType::kSimplification ? "simplification" : "optimization";
}

std::optional<RefactorType> parse_refactor_type(std::string_view text) {
  if (text == "simplification") return RefactorType::kSimplification;
  if (text == "optimization") return RefactorType::kOptimization;
  return std::nullopt;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

namespace {

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") != std::string_view::npos) fn(line, line_no);
    pos = end + 1;
  }
}

const std::string& string_field(const Value& obj, std::string_view key) {
  const Value* v = obj.find(key);
  if (v == nullptr || !v->is_string()) throw CorpusError("missing string field \"" + std::string(key) + "\"");
  return v->as_string();
}

TestCase parse_test(const Value& v, Level level) {
  if (!v.is_map()) throw CorpusError("test case must be a mapping");
  bool fn_shape = v.find("args") || v.find("expected");
  bool prog_shape = v.find("stdin_text") || v.find("expected_stdout");
  if (fn_shape == prog_shape) throw CorpusError("test case must have exactly one of the two shapes");
  if (level == Level::kFunction) {
    if (!fn_shape) throw CorpusError("function-level test needs args and expected");
    const Value* args = v.find("args");
    const Value* expected = v.find("expected");
    if (!args || !args->is_list() || !expected) throw CorpusError("function-level test needs args and expected");
    return FunctionCase{args->as_list(), *expected};
  }
  if (!prog_shape) throw CorpusError("program-level test needs stdin_text and expected_stdout");
  return ProgramCase{string_field(v, "stdin_text"), string_field(v, "expected_stdout")};
}

Value test_to_value(const TestCase& t) {
  if (const auto* f = std::get_if<FunctionCase>(&t)) {
    return Value::map({{"args", Value(List(f->args))}, {"expected", f->expected}});
  }
  const auto& p = std::get<ProgramCase>(t);
  return Value::map({{"expected_stdout", p.expected_stdout}, {"stdin_text", p.stdin_text}});
}

}  // namespace

ProblemRecord parse_problem(const Value& object) {
  if (!object.is_map()) throw CorpusError("record must be a mapping");
  ProblemRecord r;
  r.id = string_field(object, "id");
  if (r.id.empty()) throw CorpusError("empty id");
  r.dataset = string_field(object, "dataset");
  const std::string& level = string_field(object, "level");
  if (level == "function") {
    r.level = Level::kFunction;
  } else if (level == "program") {
    r.level = Level::kProgram;
  } else {
    throw CorpusError("record \"" + r.id + "\": unknown level \"" + level + "\"");
  }
  const Value* entry = object.find("entry_point");
  if (entry && !entry->is_null()) {
    if (!entry->is_string()) throw CorpusError("record \"" + r.id + "\": entry_point must be a string");
    r.entry_point = entry->as_string();
  }
  if (r.level == Level::kFunction && (!r.entry_point || r.entry_point->empty())) {
    throw CorpusError("record \"" + r.id + "\": missing entry_point for a function-level problem");
  }
  if (r.level == Level::kProgram && r.entry_point) {
    throw CorpusError("record \"" + r.id + "\": entry_point given for a program-level problem");
  }
  r.reference_source = string_field(object, "reference_source");
  if (const Value* tests = object.find("tests")) {
    if (!tests->is_list()) throw CorpusError("record \"" + r.id + "\": tests must be a list");
    for (const Value& t : tests->as_list()) r.tests.push_back(parse_test(t, r.level));
  }
  const Value* schema = object.find("schema");
  if (schema == nullptr) throw CorpusError("record \"" + r.id + "\": missing schema");
  try {
    r.schema = parse_schema(*schema);
  } catch (const SchemaError& e) {
    throw CorpusError("record \"" + r.id + "\": " + e.what());
  }
  if (schema->find("mode") == nullptr) {
    r.schema.mode = r.level == Level::kProgram ? InputMode::kTextStream : InputMode::kArgumentVector;
  }
  return r;
}

Value problem_to_value(const ProblemRecord& r) {
  List tests;
  for (const auto& t : r.tests) tests.push_back(test_to_value(t));
  return Value::map({{"id", r.id},
                     {"dataset", r.dataset},
                     {"level", std::string(to_string(r.level))},
                     {"entry_point", r.entry_point ? Value(*r.entry_point) : Value()},
                     {"reference_source", r.reference_source},
                     {"tests", Value(std::move(tests))},
                     {"schema", schema_to_value(r.schema)}});
}

std::vector<ProblemRecord> parse_corpus(std::string_view text) {
  std::vector<ProblemRecord> out;
  std::set<std::string, std::less<>> ids;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    Value v;
    try {
      v = parse_value(line);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
    ProblemRecord r;
    try {
      r = parse_problem(v);
    } catch (const CorpusError& e) {
      throw CorpusError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!ids.insert(r.id).second) {
      throw CorpusError("line " + std::to_string(line_no) + ": duplicate id \"" + r.id + "\"");
    }
    out.push_back(std::move(r));
  });
  return out;
}

std::vector<ProblemRecord> load_corpus(const std::filesystem::path& path) {
  return parse_corpus(read_file(path));
}

std::string write_corpus(std::span<const ProblemRecord> records) {
  std::string out;
  for (const auto& r : records) {
    out += to_text(problem_to_value(r));
    out += '\n';
  }
  return out;
}

std::vector<ProblemRecord> sample_problems(std::span<const ProblemRecord> records, std::size_t k,
                                           std::uint64_t seed) {
  if (k > records.size()) {
    throw InvalidArgument("cannot sample " + std::to_string(k) + " of " + std::to_string(records.size()) +
                          " records");
  }
  // Selection sampling: keep record i with probability needed / remaining.
  ByteStream stream = derive_stream(seed, "sample_problems", 0);
  std::vector<ProblemRecord> out;
  out.reserve(k);
  std::size_t needed = k;
  for (std::size_t i = 0; i < records.size() && needed > 0; ++i) {
    std::uint64_t remaining = records.size() - i;
    if (stream.next_u64() % remaining < needed) {
      out.push_back(records[i]);
      --needed;
    }
  }
  return out;
}

std::vector<RefactoringRecord> parse_refactorings(std::string_view text) {
  std::vector<RefactoringRecord> out;
  std::set<std::tuple<std::string, std::string, RefactorType>> keys;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    Value v;
    try {
      v = parse_value(line);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
    auto where = "line " + std::to_string(line_no) + ": ";
    RefactoringRecord r;
    try {
      if (!v.is_map()) throw CorpusError("record must be a mapping");
      r.problem_id = string_field(v, "problem_id");
      r.model = string_field(v, "model");
      auto type = parse_refactor_type(string_field(v, "refactor_type"));
      if (!type) throw CorpusError("unknown refactor_type \"" + string_field(v, "refactor_type") + "\"");
      r.refactor_type = *type;
      r.source = string_field(v, "source");
    } catch (const CorpusError& e) {
      throw CorpusError(where + e.what());
    }
    if (!keys.emplace(r.problem_id, r.model, r.refactor_type).second) {
      throw CorpusError(where + "duplicate refactoring for (" + r.problem_id + ", " + r.model + ", " +
                        std::string(to_string(r.refactor_type)) + ")");
    }
    out.push_back(std::move(r));
  });
  return out;
}

std::vector<RefactoringRecord> load_refactorings(const std::filesystem::path& path) {
  return parse_refactorings(read_file(path));
}

std::string write_refactorings(std::span<const RefactoringRecord> records) {
  std::string out;
  for (const auto& r : records) {
    out += to_text(Value::map({{"problem_id", r.problem_id},
                               {"model", r.model},
                               {"refactor_type", std::string(to_string(r.refactor_type))},
                               {"source", r.source}}));
    out += '\n';
  }
  return out;
}

}  // namespace eqfuzz
