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

#include "process.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <mutex>
#include <system_error>
#include <thread>

#include "eqfuzz/errors.hpp"

namespace eqfuzz::internal {

namespace {

using Clock = std::chrono::steady_clock;

void ignore_sigpipe() {
  static std::once_flag once;
  std::call_once(once, [] { ::signal(SIGPIPE, SIG_IGN); });
}

class Fd {
 public:
  Fd() = default;
  explicit Fd(int fd) : fd_(fd) {}
  ~Fd() { reset(); }
  Fd(Fd&& o) noexcept : fd_(o.release()) {}
  Fd& operator=(Fd&& o) noexcept {
    if (this != &o) {
      reset();
      fd_ = o.release();
    }
    return *this;
  }
  int get() const { return fd_; }
  int release() {
    int fd = fd_;
    fd_ = -1;
    return fd;
  }
  void reset() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }
  explicit operator bool() const { return fd_ >= 0; }

 private:
  int fd_ = -1;
};

struct Pipe {
  Fd read, write;
};

Pipe make_pipe() {
  int fds[2];
  if (::pipe2(fds, O_CLOEXEC) != 0) {
    throw HarnessError(std::string("pipe2: ") + std::strerror(errno));
  }
  return Pipe{Fd(fds[0]), Fd(fds[1])};
}

void set_nonblocking(int fd) { ::fcntl(fd, F_SETFL, ::fcntl(fd, F_GETFL) | O_NONBLOCK); }

void kill_group(pid_t pid) {
  ::kill(-pid, SIGKILL);
  ::kill(pid, SIGKILL);
}

int remaining_ms(Clock::time_point deadline) {
  auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
  return left < 0 ? 0 : static_cast<int>(std::min<long long>(left + 1, 1000));
}

}  // namespace

ProcessResult run_process(const std::vector<std::string>& argv, const std::filesystem::path& workdir,
                          std::string_view input, std::chrono::nanoseconds timeout,
                          std::size_t max_output, std::size_t max_err) {
  if (argv.empty()) throw HarnessError("empty command");
  ignore_sigpipe();

  std::vector<char*> cargv;
  cargv.reserve(argv.size() + 1);
  for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
  cargv.push_back(nullptr);
  std::string cwd = workdir.string();

  Pipe in = make_pipe(), out = make_pipe(), err = make_pipe(), status = make_pipe();

  auto start = Clock::now();
  pid_t pid = ::fork();
  if (pid < 0) throw HarnessError(std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    ::setpgid(0, 0);
    ::signal(SIGPIPE, SIG_DFL);
    if (::chdir(cwd.c_str()) != 0 || ::dup2(in.read.get(), 0) < 0 || ::dup2(out.write.get(), 1) < 0 ||
        ::dup2(err.write.get(), 2) < 0) {
      int e = errno;
      (void)!::write(status.write.get(), &e, sizeof e);
      ::_exit(127);
    }
    ::execvp(cargv[0], cargv.data());
    int e = errno;
    (void)!::write(status.write.get(), &e, sizeof e);
    ::_exit(127);
  }
  ::setpgid(pid, pid);
  in.read.reset();
  out.write.reset();
  err.write.reset();
  status.write.reset();

  int child_errno = 0;
  ssize_t got;
  do {
    got = ::read(status.read.get(), &child_errno, sizeof child_errno);
  } while (got < 0 && errno == EINTR);
  if (got == static_cast<ssize_t>(sizeof child_errno)) {
    ::waitpid(pid, nullptr, 0);
    throw HarnessError("cannot start \"" + argv[0] + "\": " + std::strerror(child_errno));
  }

  ProcessResult result;
  set_nonblocking(in.write.get());
  set_nonblocking(out.read.get());
  set_nonblocking(err.read.get());
  if (input.empty()) in.write.reset();

  const auto deadline = start + timeout;
  std::size_t written = 0;
  char buf[64 * 1024];
  bool aborted = false;

  while (out.read || err.read) {
    if (Clock::now() >= deadline) {
      result.status = ProcessResult::Status::kTimedOut;
      aborted = true;
      break;
    }
    pollfd fds[3];
    nfds_t n = 0;
    int idx_in = -1, idx_out = -1, idx_err = -1;
    if (in.write) {
      idx_in = static_cast<int>(n);
      fds[n++] = {in.write.get(), POLLOUT, 0};
    }
    if (out.read) {
      idx_out = static_cast<int>(n);
      fds[n++] = {out.read.get(), POLLIN, 0};
    }
    if (err.read) {
      idx_err = static_cast<int>(n);
      fds[n++] = {err.read.get(), POLLIN, 0};
    }
    int rc = ::poll(fds, n, remaining_ms(deadline));
    if (rc < 0) {
      if (errno == EINTR) continue;
      kill_group(pid);
      ::waitpid(pid, nullptr, 0);
      throw HarnessError(std::string("poll: ") + std::strerror(errno));
    }
    if (idx_in >= 0 && fds[idx_in].revents) {
      ssize_t w = ::write(in.write.get(), input.data() + written, input.size() - written);
      if (w > 0) written += static_cast<std::size_t>(w);
      if ((w < 0 && errno != EAGAIN && errno != EINTR) || written == input.size()) in.write.reset();
    }
    if (idx_out >= 0 && fds[idx_out].revents) {
      ssize_t r = ::read(out.read.get(), buf, sizeof buf);
      if (r > 0) {
        result.out.append(buf, static_cast<std::size_t>(r));
        if (result.out.size() > max_output) {
          result.out.resize(max_output);
          result.status = ProcessResult::Status::kOutputOverflow;
          aborted = true;
          break;
        }
      } else if (r == 0 || (errno != EAGAIN && errno != EINTR)) {
        out.read.reset();
      }
    }
    if (idx_err >= 0 && fds[idx_err].revents) {
      ssize_t r = ::read(err.read.get(), buf, sizeof buf);
      if (r > 0) {
        std::size_t room = max_err > result.err.size() ? max_err - result.err.size() : 0;
        result.err.append(buf, std::min(room, static_cast<std::size_t>(r)));
      } else if (r == 0 || (errno != EAGAIN && errno != EINTR)) {
        err.read.reset();
      }
    }
  }
  in.write.reset();

  int wstatus = 0;
  if (!aborted) {
    // Streams are closed; the child may still be running.
    while (true) {
      pid_t w = ::waitpid(pid, &wstatus, WNOHANG);
      if (w == pid) break;
      if (w < 0 && errno != EINTR) break;
      if (Clock::now() >= deadline) {
        result.status = ProcessResult::Status::kTimedOut;
        aborted = true;
        break;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(1));
    }
  }
  if (aborted) {
    kill_group(pid);
    ::waitpid(pid, &wstatus, 0);
  } else {
    // Reap stragglers left in the group.
    ::kill(-pid, SIGKILL);
    if (WIFEXITED(wstatus)) {
      result.status = ProcessResult::Status::kExited;
      result.exit_code = WEXITSTATUS(wstatus);
    } else if (WIFSIGNALED(wstatus)) {
      result.status = ProcessResult::Status::kSignaled;
      result.signal = WTERMSIG(wstatus);
    }
  }
  result.wall = Clock::now() - start;
  return result;
}

TempDir::TempDir(const std::filesystem::path& root, std::string_view prefix) {
  std::string tmpl = (root / (std::string(prefix) + "XXXXXX")).string();
  if (::mkdtemp(tmpl.data()) == nullptr) {
    throw HarnessError("mkdtemp under " + root.string() + ": " + std::strerror(errno));
  }
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace eqfuzz::internal
