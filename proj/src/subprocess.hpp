// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#pragma once

#include <chrono>
#include <mutex>
#include <string>
#include <vector>

namespace logoscope {

// A long-running child process (`/bin/sh -c command`) spoken to line by line:
// we write N request lines, flush, and read back exactly N response lines.
// One request is in flight at a time. Failures raise Error(kAdapter,
// "AdapterFailure") and leave the process dead; the next call restarts it.
class LineProcess {
 public:
  explicit LineProcess(std::string command,
                       std::chrono::milliseconds timeout = std::chrono::milliseconds(10000));
  ~LineProcess();
  LineProcess(const LineProcess&) = delete;
  LineProcess& operator=(const LineProcess&) = delete;

  std::vector<std::string> exchange(const std::vector<std::string>& lines);

 private:
  void start();
  void stop();
  std::string read_line();

  std::string command_;
  std::chrono::milliseconds timeout_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  std::mutex mutex_;
};

}  // namespace logoscope
