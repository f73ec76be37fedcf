// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace logent {

enum class Label { Unlabeled, Normal, Anomalous };

// One log line. `offset` is the byte position of the record in its source
// stream; `raw` is the message text without a line terminator.
struct LogRecord {
  std::uint64_t offset = 0;
  std::string raw;
  std::string node;     // empty when unset
  std::string session;  // empty when unset
  Label label = Label::Unlabeled;
};

enum class CorpusFormat { Plain, Structured };
enum class BadLinePolicy { Skip, Abort };

struct LineError {
  std::size_t line = 0;  // 1-based
  std::string what;
};

struct ReadResult {
  std::vector<LogRecord> records;
  std::uint64_t total_bytes = 0;  // bytes consumed from the source
  std::vector<LineError> skipped;
};

// Parses a corpus held in memory. Plain format yields one record per line
// with node/session/label unset. Structured format is one JSON object per
// line with fields (ts, node, level, msg, session, label), all optional
// except msg. Malformed structured lines are skipped (and reported) or
// abort with a ParseError, per `policy`.
ReadResult read_corpus(std::string_view text, CorpusFormat format,
                       BadLinePolicy policy = BadLinePolicy::Skip);

// Reads a corpus file; sniffs the format from the first non-blank line
// when `format` is not given.
ReadResult read_corpus_file(const std::string& path,
                            std::optional<CorpusFormat> format = {},
                            BadLinePolicy policy = BadLinePolicy::Skip);

CorpusFormat sniff_format(std::string_view text);

// Canonical structured serialization of a record (no trailing newline).
// Keys appear in a fixed order so regeneration is byte-stable.
std::string to_jsonl(const LogRecord& record);

// Records with no session id land in this bucket.
inline constexpr const char* kUngroupedSession = "ungrouped";

// Partitions records by session id, preserving source order within each
// group.
std::map<std::string, std::vector<LogRecord>> group_by_session(
    const std::vector<LogRecord>& records);

}  // namespace logent
