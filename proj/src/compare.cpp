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

#include "eqfuzz/compare.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace eqfuzz {

std::string_view to_string(OutputNormalization mode) {
  return mode == OutputNormalization::kTrim ? "trim" : "strict";
}

namespace {

bool floats_equal(double a, double b, const CompareConfig& cfg) {
  if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
  if (a == b) return true;
  if (std::isinf(a) || std::isinf(b)) return false;
  double diff = std::fabs(a - b);
  double scale = std::max(std::fabs(a), std::fabs(b));
  return diff <= std::max(cfg.float_abs_tol, cfg.float_rel_tol * scale);
}

}  // namespace

bool values_equal(const Value& a, const Value& b, const CompareConfig& cfg) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Value::Kind::kFloat:
      return floats_equal(a.as_float(), b.as_float(), cfg);
    case Value::Kind::kList: {
      const List& x = a.as_list();
      const List& y = b.as_list();
      if (x.size() != y.size()) return false;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (!values_equal(x[i], y[i], cfg)) return false;
      }
      return true;
    }
    case Value::Kind::kMap: {
      const Entries& x = a.as_map();
      const Entries& y = b.as_map();
      if (x.size() != y.size()) return false;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].first != y[i].first || !values_equal(x[i].second, y[i].second, cfg)) return false;
      }
      return true;
    }
    default:
      return a == b;
  }
}

bool outcomes_equal(const ExecutionOutcome& a, const ExecutionOutcome& b, const CompareConfig& cfg) {
  auto comparable = [](const ExecutionOutcome& o) {
    return o.tag() == OutcomeTag::kValue || o.tag() == OutcomeTag::kError;
  };
  if (!comparable(a) || !comparable(b)) {
    throw std::logic_error("outcomes_equal called on a timeout or non-executable outcome");
  }
  if (a.tag() != b.tag()) return false;
  if (a.tag() == OutcomeTag::kError) return a.error_class() == b.error_class();
  return values_equal(a.payload(), b.payload(), cfg);
}

Value normalize_program_output(std::string_view raw, const CompareConfig& cfg) {
  if (cfg.program_output_normalization == OutputNormalization::kStrict) return Value(std::string(raw));
  std::vector<std::string> lines;
  std::string line;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    char c = raw[i];
    if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < raw.size() && raw[i + 1] == '\n') ++i;
      lines.push_back(std::move(line));
      line.clear();
    } else {
      line += c;
    }
  }
  lines.push_back(std::move(line));
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\v' || c == '\f'; };
  for (auto& l : lines) {
    while (!l.empty() && is_space(l.back())) l.pop_back();
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i > 0) out += '\n';
    out += lines[i];
  }
  return Value(std::move(out));
}

}  // namespace eqfuzz
