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

#include "eqfuzz/input_gen.hpp"

#include <algorithm>
#include <cmath>

#include "eqfuzz/errors.hpp"

namespace eqfuzz {

std::string_view to_string(Level level) {
  return level == Level::kFunction ? "function" : "program";
}

namespace {

// Uniform-ish draw from [lo, hi] by modular reduction of 8 stream bytes.
std::int64_t draw_int(ByteStream& stream, std::int64_t lo, std::int64_t hi) {
  std::uint64_t u = stream.next_u64();
  std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  std::uint64_t offset = span == ~0ULL ? u : u % (span + 1);
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + offset);
}

std::size_t draw_length(ByteStream& stream, std::pair<std::size_t, std::size_t> bounds) {
  return static_cast<std::size_t>(draw_int(stream, static_cast<std::int64_t>(bounds.first),
                                           static_cast<std::int64_t>(bounds.second)));
}

double draw_float(ByteStream& stream, double lo, double hi) {
  constexpr double kMaxMantissa = 9007199254740991.0;  // 2^53 - 1
  double t = static_cast<double>(stream.next_u64() >> 11) / kMaxMantissa;
  double v = lo + (hi - lo) * t;
  if (!std::isfinite(v)) v = lo * (1.0 - t) + hi * t;
  return std::clamp(v, lo, hi);
}

}  // namespace

Value decode_value(ByteStream& stream, const ParamSpec& spec) {
  switch (spec.kind) {
    case ParamKind::kInt: {
      auto [lo, hi] = spec.int_range();
      return Value(draw_int(stream, lo, hi));
    }
    case ParamKind::kFloat: {
      auto [lo, hi] = spec.float_range();
      return Value(draw_float(stream, lo, hi));
    }
    case ParamKind::kBool:
      return Value((stream.next_byte() & 1) != 0);
    case ParamKind::kString: {
      std::size_t len = draw_length(stream, spec.length_range());
      const auto& alphabet = spec.alphabet();
      std::string out;
      for (std::size_t i = 0; i < len; ++i) {
        out += alphabet[static_cast<std::size_t>(
            draw_int(stream, 0, static_cast<std::int64_t>(alphabet.size()) - 1))];
      }
      return Value(std::move(out));
    }
    case ParamKind::kList:
    case ParamKind::kTuple: {
      std::size_t len = draw_length(stream, spec.length_range());
      List items;
      items.reserve(len);
      for (std::size_t i = 0; i < len; ++i) items.push_back(decode_value(stream, *spec.element));
      return Value(std::move(items));
    }
  }
  return Value();
}

std::string render_text_stream(std::span<const Value> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += '\n';
    out += to_text(values[i]);
  }
  return out;
}

TestInput generate_input(const InputSchema& schema, const GenConfig& cfg,
                         std::string_view problem_id, std::size_t index) {
  ByteStream stream = derive_stream(cfg.seed, problem_id, index);
  for (std::size_t attempt = 0; attempt < cfg.max_rejections; ++attempt) {
    std::vector<Value> values;
    values.reserve(schema.params.size());
    for (const ParamSpec& p : schema.params) values.push_back(decode_value(stream, p));
    if (satisfies(schema, values)) {
      TestInput input;
      input.index = index;
      if (schema.mode == InputMode::kTextStream) input.rendered = render_text_stream(values);
      input.values = std::move(values);
      return input;
    }
  }
  throw GenerationExhausted("input " + std::to_string(index) + " of problem \"" +
                            std::string(problem_id) + "\" rejected " +
                            std::to_string(cfg.max_rejections) + " times in a row");
}

std::vector<TestInput> generate_inputs(const InputSchema& schema, const GenConfig& cfg,
                                       std::string_view problem_id) {
  if (cfg.n < 1) throw InvalidArgument("GenConfig.n must be >= 1");
  if (cfg.max_rejections < 1) throw InvalidArgument("GenConfig.max_rejections must be >= 1");
  std::vector<TestInput> out;
  out.reserve(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) out.push_back(generate_input(schema, cfg, problem_id, i));
  return out;
}

}  // namespace eqfuzz
