// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#include "logent/window.hpp"

#include "logent/error.hpp"

namespace logent {

std::vector<LogWindow> make_windows(std::vector<LogRecord> records,
                                    std::uint64_t total_bytes,
                                    std::uint64_t target_bytes) {
  if (target_bytes < 1) throw ConfigError("target_bytes must be >= 1");

  std::vector<LogWindow> windows;
  if (records.empty()) return windows;

  for (std::size_t i = 1; i < records.size(); ++i)
    if (records[i].offset <= records[i - 1].offset)
      throw InvalidInputError("record offsets must be strictly increasing");
  if (total_bytes <= records.back().offset)
    throw InvalidInputError("total_bytes must cover the last record");

  LogWindow cur;
  cur.index = 0;
  cur.begin = records.front().offset;
  cur.target_bytes = target_bytes;

  for (std::size_t i = 0; i < records.size(); ++i) {
    std::uint64_t extent_end =
        (i + 1 < records.size()) ? records[i + 1].offset : total_bytes;
    cur.records.push_back(std::move(records[i]));
    if (extent_end - cur.begin >= target_bytes) {
      cur.end = extent_end;
      std::uint64_t next_begin = extent_end;
      std::size_t next_index = cur.index + 1;
      windows.push_back(std::move(cur));
      cur = LogWindow{};
      cur.index = next_index;
      cur.begin = next_begin;
      cur.target_bytes = target_bytes;
    }
  }
  if (!cur.records.empty()) {
    cur.end = total_bytes;
    windows.push_back(std::move(cur));
  }
  return windows;
}

}  // namespace logent
