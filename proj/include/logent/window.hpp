// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "logent/record.hpp"

namespace logent {

// A contiguous, record-aligned slice of a log stream. `begin`/`end` are
// source byte offsets; no record is split across windows and window spans
// tile the input.
struct LogWindow {
  std::size_t index = 0;
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
  std::vector<LogRecord> records;
  std::uint64_t target_bytes = 0;

  std::uint64_t byte_length() const { return end - begin; }
};

// Greedy byte-bounded windowing: a window closes at the first record that
// brings its byte total to >= target_bytes; the final window may be short.
// `total_bytes` is the total source size, which bounds the extent of the
// last record.
std::vector<LogWindow> make_windows(std::vector<LogRecord> records,
                                    std::uint64_t total_bytes,
                                    std::uint64_t target_bytes = 4096);

}  // namespace logent
