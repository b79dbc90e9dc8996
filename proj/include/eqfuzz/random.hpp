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

#ifndef EQFUZZ_RANDOM_HPP_
#define EQFUZZ_RANDOM_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace eqfuzz {

// SplitMix64 finalizer (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// FNV-1a, 64-bit.
constexpr std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Counter-based byte source. Word k of the stream is
// mix64(key + (k + 1) * golden), emitted little-endian; any position can be
// computed without touching earlier ones.
class ByteStream {
 public:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  explicit ByteStream(std::uint64_t key) : key_(key) {}

  std::uint64_t key() const { return key_; }

  std::uint8_t next_byte() {
    if (offset_ == 8) refill();
    return buffer_[offset_++];
  }

  // Eight bytes, little-endian.
  std::uint64_t next_u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(next_byte()) << (8 * i);
    return v;
  }

  std::size_t bytes_consumed() const { return words_ * 8 - (8 - offset_); }

 private:
  void refill() {
    std::uint64_t w = mix64(key_ + (words_ + 1) * kGolden);
    ++words_;
    for (int i = 0; i < 8; ++i) buffer_[i] = static_cast<std::uint8_t>(w >> (8 * i));
    offset_ = 0;
  }

  std::uint64_t key_;
  std::uint64_t words_ = 0;
  std::array<std::uint8_t, 8> buffer_{};
  std::size_t offset_ = 8;
};

// key = mix64(mix64(mix64(seed) ^ fnv1a64(problem_id)) ^ index)
constexpr std::uint64_t stream_key(std::uint64_t seed, std::string_view problem_id,
                                   std::uint64_t index) {
  return mix64(mix64(mix64(seed) ^ fnv1a64(problem_id)) ^ index);
}

inline ByteStream derive_stream(std::uint64_t seed, std::string_view problem_id,
                                std::uint64_t index) {
  return ByteStream(stream_key(seed, problem_id, index));
}

}  // namespace eqfuzz

#endif  // EQFUZZ_RANDOM_HPP_
