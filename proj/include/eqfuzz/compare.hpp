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

#ifndef EQFUZZ_COMPARE_HPP_
#define EQFUZZ_COMPARE_HPP_

#include <string_view>

#include "eqfuzz/exec.hpp"
#include "eqfuzz/value.hpp"

namespace eqfuzz {

enum class OutputNormalization { kStrict, kTrim };

std::string_view to_string(OutputNormalization mode);

struct CompareConfig {
  double float_rel_tol = 1e-6;
  double float_abs_tol = 1e-9;
  OutputNormalization program_output_normalization = OutputNormalization::kTrim;
};

// Recursive, type-strict (3 != 3.0). Floats match when
// |a - b| <= max(abs_tol, rel_tol * max(|a|, |b|)); NaN matches NaN and
// infinities match only themselves. Reflexive and symmetric; not
// transitive once tolerances are non-zero.
bool values_equal(const Value& a, const Value& b, const CompareConfig& cfg);

// Both outcomes must be Value or Error; Timeout and NonExecutable are
// routed by the caller and throw std::logic_error here. Errors match by
// class name only.
bool outcomes_equal(const ExecutionOutcome& a, const ExecutionOutcome& b, const CompareConfig& cfg);

// trim: right-strip every line, unify CRLF/CR to LF, drop trailing blank
// lines. strict: unchanged.
Value normalize_program_output(std::string_view raw, const CompareConfig& cfg);

}  // namespace eqfuzz

#endif  // EQFUZZ_COMPARE_HPP_
