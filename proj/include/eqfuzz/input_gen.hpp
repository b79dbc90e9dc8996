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

#ifndef EQFUZZ_INPUT_GEN_HPP_
#define EQFUZZ_INPUT_GEN_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eqfuzz/random.hpp"
#include "eqfuzz/schema.hpp"
#include "eqfuzz/value.hpp"

namespace eqfuzz {

enum class Level { kFunction, kProgram };

std::string_view to_string(Level level);

inline constexpr std::size_t kFunctionLevelInputs = 2000;
inline constexpr std::size_t kProgramLevelInputs = 1000;
inline constexpr std::size_t kDefaultMaxRejections = 1000;

constexpr std::size_t default_input_count(Level level) {
  return level == Level::kFunction ? kFunctionLevelInputs : kProgramLevelInputs;
}

struct TestInput {
  std::size_t index = 0;
  std::vector<Value> values;
  // Populated in text_stream mode, and for program-level test cases.
  std::optional<std::string> rendered;
};

struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t n = kFunctionLevelInputs;
  std::size_t max_rejections = kDefaultMaxRejections;

  static GenConfig defaults_for(Level level, std::uint64_t seed = 0) {
    return GenConfig{seed, default_input_count(level), kDefaultMaxRejections};
  }
};

// Byte-driven decoding of one value:
//   int    8 bytes LE, lo + (u mod (hi - lo + 1))
//   float  top 53 bits of 8 bytes LE scaled onto the closed [lo, hi]
//   bool   low bit of 1 byte
//   string length drawn like an int over the length bounds, then one
//          alphabet index per position drawn the same way
//   list / tuple  length as above, then elements recursively
Value decode_value(ByteStream& stream, const ParamSpec& spec);

// One parameter per line, each in canonical value syntax.
std::string render_text_stream(std::span<const Value> values);

// Input number `index` of the set: draws from derive_stream(seed,
// problem_id, index) until a candidate satisfies the schema. Throws
// GenerationExhausted after max_rejections consecutive rejections.
TestInput generate_input(const InputSchema& schema, const GenConfig& cfg,
                         std::string_view problem_id, std::size_t index);

// Exactly cfg.n inputs, indices 0..n-1. Pure in (schema, cfg, problem_id).
std::vector<TestInput> generate_inputs(const InputSchema& schema, const GenConfig& cfg,
                                       std::string_view problem_id = {});

}  // namespace eqfuzz

#endif  // EQFUZZ_INPUT_GEN_HPP_
