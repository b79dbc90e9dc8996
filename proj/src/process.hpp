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

#ifndef EQFUZZ_SRC_PROCESS_HPP_
#define EQFUZZ_SRC_PROCESS_HPP_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace eqfuzz::internal {

struct ProcessResult {
  enum class Status { kExited, kSignaled, kTimedOut, kOutputOverflow };
  Status status = Status::kExited;
  int exit_code = 0;
  int signal = 0;
  std::string out;
  std::string err;
  std::chrono::nanoseconds wall{};
};

// Spawns argv in its own process group with `workdir` as cwd, feeds
// `input` on stdin, and collects stdout (capped at max_output bytes) and
// stderr (capped at max_err, excess dropped). On timeout or overflow the
// whole group is killed. Throws HarnessError if the program cannot be
// started.
ProcessResult run_process(const std::vector<std::string>& argv, const std::filesystem::path& workdir,
                          std::string_view input, std::chrono::nanoseconds timeout,
                          std::size_t max_output, std::size_t max_err = 64 * 1024);

// mkdtemp under `root`; removed recursively on destruction.
class TempDir {
 public:
  explicit TempDir(const std::filesystem::path& root, std::string_view prefix = "eqfuzz-");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace eqfuzz::internal

#endif  // EQFUZZ_SRC_PROCESS_HPP_
