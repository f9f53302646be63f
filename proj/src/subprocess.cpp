// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#include "subprocess.hpp"

#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <thread>

#include "error.hpp"

namespace logoscope {

namespace {

[[noreturn]] void fail(const std::string& message) {
  throw Error(ErrorCode::kAdapter, "AdapterFailure", message);
}

}  // namespace

LineProcess::LineProcess(std::string command, std::chrono::milliseconds timeout)
    : command_(std::move(command)), timeout_(timeout) {}

LineProcess::~LineProcess() { stop(); }

void LineProcess::start() {
  static std::once_flag ignore_sigpipe;
  std::call_once(ignore_sigpipe, [] { signal(SIGPIPE, SIG_IGN); });
  int in_pipe[2];
  int out_pipe[2];
  if (pipe(in_pipe) != 0) fail(std::string("pipe: ") + std::strerror(errno));
  if (pipe(out_pipe) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    fail(std::string("pipe: ") + std::strerror(errno));
  }
  const pid_t pid = fork();
  if (pid < 0) fail(std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  buffer_.clear();
}

void LineProcess::stop() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ > 0) {
    kill(pid_, SIGTERM);
    waitpid(pid_, nullptr, 0);
  }
  pid_ = -1;
}

std::string LineProcess::read_line() {
  const auto deadline = std::chrono::steady_clock::now() + timeout_;
  while (true) {
    if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) fail("timeout waiting for adapter output");
    pollfd pfd{from_child_, POLLIN, 0};
    const int rc = poll(&pfd, 1, static_cast<int>(left.count()));
    if (rc < 0 && errno == EINTR) continue;
    if (rc <= 0) fail("timeout waiting for adapter output");
    char chunk[4096];
    const ssize_t n = read(from_child_, chunk, sizeof chunk);
    if (n <= 0) fail("adapter closed its output");
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

std::vector<std::string> LineProcess::exchange(const std::vector<std::string>& lines) {
  std::lock_guard lock(mutex_);
  if (pid_ < 0) start();
  std::string payload;
  for (const auto& l : lines) {
    payload += l;
    payload.push_back('\n');
  }
  // Writer thread so a chatty child cannot deadlock us on a full pipe.
  bool write_ok = true;
  std::thread writer([&] {
    std::size_t off = 0;
    while (off < payload.size()) {
      const ssize_t n = write(to_child_, payload.data() + off, payload.size() - off);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) {
        write_ok = false;
        return;
      }
      off += static_cast<std::size_t>(n);
    }
  });
  std::vector<std::string> out;
  try {
    for (std::size_t i = 0; i < lines.size(); ++i) out.push_back(read_line());
  } catch (...) {
    stop();
    writer.join();
    throw;
  }
  writer.join();
  if (!write_ok) {
    stop();
    fail("could not write to adapter");
  }
  return out;
}

}  // namespace logoscope
