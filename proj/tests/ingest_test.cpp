// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "logent/error.hpp"
#include "logent/mask.hpp"
#include "logent/record.hpp"
#include "logent/rng.hpp"
#include "logent/tokenize.hpp"
#include "logent/window.hpp"

using namespace logent;

TEST_CASE("plain corpus: one record per line with byte offsets") {
  auto result = read_corpus("a\nb\n", CorpusFormat::Plain);
  REQUIRE(result.records.size() == 2);
  CHECK(result.records[0].offset == 0);
  CHECK(result.records[0].raw == "a");
  CHECK(result.records[1].offset == 2);
  CHECK(result.records[1].raw == "b");
  CHECK(result.records[0].node.empty());
  CHECK(result.records[0].session.empty());
  CHECK(result.records[0].label == Label::Unlabeled);
  CHECK(result.total_bytes == 4);
}

TEST_CASE("plain corpus: missing trailing newline and CRLF") {
  auto result = read_corpus("x\r\ny", CorpusFormat::Plain);
  REQUIRE(result.records.size() == 2);
  CHECK(result.records[0].raw == "x");
  CHECK(result.records[1].offset == 3);
  CHECK(result.records[1].raw == "y");
}

TEST_CASE("structured corpus: field copy") {
  auto result = read_corpus(
      R"({"msg":"x","session":"i-42","label":"anomalous"})" "\n",
      CorpusFormat::Structured);
  REQUIRE(result.records.size() == 1);
  CHECK(result.records[0].raw == "x");
  CHECK(result.records[0].session == "i-42");
  CHECK(result.records[0].label == Label::Anomalous);
}

TEST_CASE("structured corpus: malformed line skipped with count, later lines kept") {
  std::string text = "{bad json\n" R"({"msg":"ok"})" "\n";
  auto result = read_corpus(text, CorpusFormat::Structured, BadLinePolicy::Skip);
  REQUIRE(result.records.size() == 1);
  CHECK(result.records[0].raw == "ok");
  REQUIRE(result.skipped.size() == 1);
  CHECK(result.skipped[0].line == 1);

  CHECK_THROWS_AS(
      read_corpus(text, CorpusFormat::Structured, BadLinePolicy::Abort),
      ParseError);
}

TEST_CASE("structured corpus: extra fields tolerated, bad label rejected") {
  auto ok = read_corpus(
      R"({"ts":1,"level":"INFO","msg":"m","node":"n1"})" "\n",
      CorpusFormat::Structured);
  REQUIRE(ok.records.size() == 1);
  CHECK(ok.records[0].node == "n1");

  auto bad = read_corpus(R"({"msg":"m","label":"weird"})" "\n",
                         CorpusFormat::Structured);
  CHECK(bad.records.empty());
  CHECK(bad.skipped.size() == 1);
}

TEST_CASE("format sniffing") {
  CHECK(sniff_format("  {\"msg\":\"x\"}") == CorpusFormat::Structured);
  CHECK(sniff_format("plain text line") == CorpusFormat::Plain);
  CHECK(sniff_format("") == CorpusFormat::Plain);
}

TEST_CASE("mask: rules apply in list order over maximal matches") {
  Masker masker(std::vector<MaskRule>{{R"(\b[A-Za-z]+-\d+(?:/\d+)?\b)", "<ID>"},
                 {R"(\b\d+\b)", "<NUM>"}});
  CHECK(masker.apply("Executor added: app-20/3 on worker-7 with 4 core(s)") ==
        "Executor added: <ID> on <ID> with <NUM> core(s)");
}

TEST_CASE("mask: identity when nothing matches") {
  Masker masker(std::vector<MaskRule>{{R"(\b\d+\b)", "<NUM>"}});
  CHECK(masker.apply("no digits here") == "no digits here");
}

TEST_CASE("mask: IP rule ahead of NUM wins") {
  Masker masker(std::vector<MaskRule>{{R"(\b(?:\d{1,3}\.){3}\d{1,3}\b)", "<IP>"},
                 {R"(\b\d+\b)", "<NUM>"}});
  CHECK(masker.apply("192.168.210.11") == "<IP>");
}

TEST_CASE("mask: standard rules") {
  Masker masker = Masker::standard();
  CHECK(masker.apply("2025-03-14 09:00:01,234 INFO up") == "<TS> INFO up");
  CHECK(masker.apply("peer 192.168.210.11:50010") == "peer <IP>:<NUM>");
  CHECK(masker.apply("block part-4f3a217b done") == "block part-<HEX> done");
  CHECK(masker.apply("4096 bytes") == "<NUM> bytes");
  // hex needs both a digit and a letter
  CHECK(masker.apply("added cafe") == "added cafe");
  CHECK(masker.apply("at /srv/jobs/run-9/part-12 now") == "at <PATH> now");
}

TEST_CASE("mask: invalid pattern or placeholder fails at load time") {
  CHECK_THROWS_AS(Masker(std::vector<MaskRule>{{"(unclosed", "<NUM>"}}), ConfigError);
  CHECK_THROWS_AS(Masker(std::vector<MaskRule>{{R"(\d+)", "<NOPE>"}}), ConfigError);
}

TEST_CASE("mask rules load from a JSON file") {
  auto dir = std::filesystem::temp_directory_path();
  auto path = (dir / "logent-rules-test.json").string();
  {
    std::ofstream out(path);
    out << R"([{"pattern":"\\b[A-Za-z]+-\\d+\\b","placeholder":"<ID>"},
               {"pattern":"\\b\\d+\\b","placeholder":"<NUM>"}])";
  }
  Masker masker(load_mask_rules(path));
  CHECK(masker.apply("worker-7 sent 12 blocks") == "<ID> sent <NUM> blocks");
  std::filesystem::remove(path);

  {
    std::ofstream out(path);
    out << R"({"pattern":"x"})";  // not an array
  }
  CHECK_THROWS_AS(load_mask_rules(path), ConfigError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_mask_rules(path), ConfigError);  // missing file
}

TEST_CASE("mask idempotence on random log-ish text") {
  Masker masker = Masker::standard();
  Rng rng(7);
  const char* words[] = {"executor", "added", "block",  "night",
                         "4096",     "deadb33f", "192.168.1.9",
                         "2025-03-14 09:00:01,002", "/a/b/c", "x7"};
  for (int iter = 0; iter < 200; ++iter) {
    std::string text;
    int n = 1 + static_cast<int>(rng.below(12));
    for (int i = 0; i < n; ++i) {
      text += words[rng.below(10)];
      text += ' ';
    }
    std::string once = masker.apply(text);
    CHECK(masker.apply(once) == once);
  }
}

TEST_CASE("tokenize: whitespace split") {
  CHECK(tokenize("a  b\tc").tokens == std::vector<std::string>{"a", "b", "c"});
  CHECK(tokenize("").tokens.empty());
  CHECK(tokenize("<ID> lost on <ID>").tokens ==
        std::vector<std::string>{"<ID>", "lost", "on", "<ID>"});
}

TEST_CASE("tokenize after mask yields no whitespace inside tokens") {
  Masker masker = Masker::standard();
  Rng rng(11);
  for (int iter = 0; iter < 100; ++iter) {
    std::string text;
    int n = static_cast<int>(rng.below(40));
    for (int i = 0; i < n; ++i)
      text += static_cast<char>(32 + rng.below(95));
    auto seq = tokenize(masker.apply(text));
    for (const auto& tok : seq.tokens) {
      CHECK(!tok.empty());
      CHECK(tok.find(' ') == std::string::npos);
      CHECK(tok.find('\t') == std::string::npos);
    }
  }
}

namespace {

std::vector<LogRecord> fixed_size_records(const std::vector<std::size_t>& sizes) {
  std::vector<LogRecord> records;
  std::uint64_t offset = 0;
  for (std::size_t s : sizes) {
    LogRecord rec;
    rec.offset = offset;
    rec.raw = std::string(s - 1, 'x');  // extent = raw + newline
    records.push_back(rec);
    offset += s;
  }
  return records;
}

}  // namespace

TEST_CASE("window: greedy close at the record reaching target") {
  auto records = fixed_size_records({3000, 3000, 3000});
  auto windows = make_windows(records, 9000, 4096);
  REQUIRE(windows.size() == 2);
  CHECK(windows[0].records.size() == 2);
  CHECK(windows[0].byte_length() == 6000);
  CHECK(windows[1].records.size() == 1);
  CHECK(windows[1].byte_length() == 3000);  // final short window
}

TEST_CASE("window: no record splitting") {
  auto records = fixed_size_records({10000});
  auto windows = make_windows(records, 10000, 4096);
  REQUIRE(windows.size() == 1);
  CHECK(windows[0].byte_length() == 10000);
}

TEST_CASE("window: empty stream") {
  CHECK(make_windows({}, 0, 4096).empty());
}

TEST_CASE("window invariants on random corpora") {
  Rng rng(23);
  for (int iter = 0; iter < 100; ++iter) {
    std::size_t count = 1 + rng.below(60);
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i < count; ++i) sizes.push_back(2 + rng.below(400));
    std::uint64_t total = 0;
    for (auto s : sizes) total += s;
    std::uint64_t target = 1 + rng.below(900);

    auto windows = make_windows(fixed_size_records(sizes), total, target);
    REQUIRE(!windows.empty());

    // Tiling: spans are contiguous and reconstruct the byte range.
    CHECK(windows.front().begin == 0);
    CHECK(windows.back().end == total);
    for (std::size_t w = 1; w < windows.size(); ++w) {
      CHECK(windows[w].begin == windows[w - 1].end);
      CHECK(windows[w].index == w);
    }
    // Every window except the last reaches the target; the overshoot is
    // bounded by the final record's extent.
    for (std::size_t w = 0; w + 1 < windows.size(); ++w) {
      CHECK(windows[w].byte_length() >= target);
      const auto& recs = windows[w].records;
      std::uint64_t last_extent = windows[w].end - recs.back().offset;
      CHECK(windows[w].byte_length() < target + last_extent);
    }
    std::size_t records_total = 0;
    for (const auto& w : windows) records_total += w.records.size();
    CHECK(records_total == count);
  }
}

TEST_CASE("group_by_session: partition with reserved bucket") {
  std::vector<LogRecord> records(3);
  records[0].session = "A";
  records[0].raw = "r1";
  records[1].session = "B";
  records[1].raw = "r2";
  records[2].session = "A";
  records[2].raw = "r3";
  auto groups = group_by_session(records);
  REQUIRE(groups.size() == 2);
  REQUIRE(groups.at("A").size() == 2);
  CHECK(groups.at("A")[0].raw == "r1");
  CHECK(groups.at("A")[1].raw == "r3");
  CHECK(groups.at("B").size() == 1);

  std::vector<LogRecord> unset(2);
  auto ungrouped = group_by_session(unset);
  REQUIRE(ungrouped.size() == 1);
  CHECK(ungrouped.at(kUngroupedSession).size() == 2);

  CHECK(group_by_session({}).empty());
}

TEST_CASE("jsonl round trip through the structured reader") {
  LogRecord rec;
  rec.raw = "hello \"world\"";
  rec.node = "node02";
  rec.session = "i-1";
  rec.label = Label::Normal;
  std::string line = to_jsonl(rec);
  auto result = read_corpus(line + "\n", CorpusFormat::Structured);
  REQUIRE(result.records.size() == 1);
  CHECK(result.records[0].raw == rec.raw);
  CHECK(result.records[0].node == rec.node);
  CHECK(result.records[0].session == rec.session);
  CHECK(result.records[0].label == Label::Normal);
}
