// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#include "logent/record.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "logent/error.hpp"

namespace logent {

namespace {

using nlohmann::json;

Label parse_label(const std::string& s) {
  if (s == "normal") return Label::Normal;
  if (s == "anomalous") return Label::Anomalous;
  throw std::invalid_argument("unknown label value '" + s + "'");
}

LogRecord parse_structured_line(std::string_view line, std::uint64_t offset) {
  json obj = json::parse(line);  // throws json::parse_error
  if (!obj.is_object()) throw std::invalid_argument("not a JSON object");
  if (!obj.contains("msg") || !obj["msg"].is_string())
    throw std::invalid_argument("missing required string field 'msg'");

  LogRecord rec;
  rec.offset = offset;
  rec.raw = obj["msg"].get<std::string>();
  if (obj.contains("node")) rec.node = obj["node"].get<std::string>();
  if (obj.contains("session")) rec.session = obj["session"].get<std::string>();
  if (obj.contains("label")) rec.label = parse_label(obj["label"].get<std::string>());
  return rec;
}

}  // namespace

ReadResult read_corpus(std::string_view text, CorpusFormat format,
                       BadLinePolicy policy) {
  ReadResult out;
  out.total_bytes = text.size();

  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    ++line_no;
    std::size_t eol = text.find('\n', pos);
    std::size_t end = (eol == std::string_view::npos) ? text.size() : eol;
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (format == CorpusFormat::Plain) {
      LogRecord rec;
      rec.offset = pos;
      rec.raw = std::string(line);
      out.records.push_back(std::move(rec));
    } else {
      try {
        out.records.push_back(parse_structured_line(line, pos));
      } catch (const std::exception& e) {
        if (policy == BadLinePolicy::Abort)
          throw ParseError(e.what(), line_no);
        out.skipped.push_back({line_no, e.what()});
      }
    }
    pos = (eol == std::string_view::npos) ? text.size() : eol + 1;
  }
  return out;
}

CorpusFormat sniff_format(std::string_view text) {
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') continue;
    return c == '{' ? CorpusFormat::Structured : CorpusFormat::Plain;
  }
  return CorpusFormat::Plain;
}

ReadResult read_corpus_file(const std::string& path,
                            std::optional<CorpusFormat> format,
                            BadLinePolicy policy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError("cannot open corpus file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = std::move(buf).str();
  return read_corpus(text, format.value_or(sniff_format(text)), policy);
}

std::string to_jsonl(const LogRecord& record) {
  // json escaping via nlohmann, key order fixed by hand
  std::string out = "{\"node\":";
  out += json(record.node).dump();
  out += ",\"msg\":";
  out += json(record.raw).dump();
  if (!record.session.empty()) {
    out += ",\"session\":";
    out += json(record.session).dump();
  }
  if (record.label != Label::Unlabeled) {
    out += ",\"label\":";
    out += record.label == Label::Anomalous ? "\"anomalous\"" : "\"normal\"";
  }
  out += "}";
  return out;
}

std::map<std::string, std::vector<LogRecord>> group_by_session(
    const std::vector<LogRecord>& records) {
  std::map<std::string, std::vector<LogRecord>> groups;
  for (const auto& rec : records) {
    const std::string& key = rec.session.empty() ? kUngroupedSession : rec.session;
    groups[key].push_back(rec);
  }
  return groups;
}

}  // namespace logent
