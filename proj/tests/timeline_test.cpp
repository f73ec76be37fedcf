// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <string>
#include <vector>

#include "logent/error.hpp"
#include "logent/mask.hpp"
#include "logent/ngram.hpp"
#include "logent/timeline.hpp"
#include "logent/tokenize.hpp"
#include "logent/window.hpp"

using namespace logent;

namespace {

// Plain-format corpus out of literal lines.
std::pair<std::vector<LogRecord>, std::uint64_t> corpus_of(
    const std::vector<std::string>& lines) {
  std::vector<LogRecord> records;
  std::uint64_t offset = 0;
  for (const auto& line : lines) {
    LogRecord rec;
    rec.offset = offset;
    rec.raw = line;
    offset += line.size() + 1;
    records.push_back(std::move(rec));
  }
  return {records, offset};
}

NGramModel train_on(const std::vector<std::string>& lines, unsigned order,
                    double alpha, const Masker& masker) {
  NGramTrainer trainer(order, alpha);
  for (const auto& line : lines) trainer.add(tokenize(masker.apply(line)));
  return trainer.finish();
}

}  // namespace

TEST_CASE("score_timeline: training-identical deterministic text scores zero") {
  Masker masker = Masker::standard();
  std::vector<std::string> lines;
  for (int i = 0; i < 120; ++i)
    lines.push_back("executor heartbeat round " + std::to_string(i));
  // After masking the round number collapses to <NUM>, so every record is
  // the same token run and all conditionals are 1 in MLE mode.
  NGramModel model = train_on(lines, 3, 0.0, masker);

  auto [records, total] = corpus_of(lines);
  auto windows = make_windows(std::move(records), total, 512);
  EntropyTimeline timeline = score_timeline(model, windows, masker);

  CHECK(timeline.points.size() == windows.size());
  for (const auto& p : timeline.points) {
    CHECK(p.entropy == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(!p.empty);
  }
}

TEST_CASE("score_timeline: unseen content scores above seen content") {
  Masker masker = Masker::standard();
  std::vector<std::string> train_lines;
  for (int i = 0; i < 200; ++i) {
    train_lines.push_back("task " + std::to_string(i) + " completed fine");
    train_lines.push_back("block " + std::to_string(i) + " replicated");
  }
  NGramModel model = train_on(train_lines, 3, 1.0, masker);

  std::vector<std::string> eval_lines;
  for (int i = 0; i < 40; ++i)
    eval_lines.push_back("task " + std::to_string(i) + " completed fine");
  for (int i = 0; i < 40; ++i)
    eval_lines.push_back("kernel oops unexpected catastrophic meltdown now");
  for (int i = 0; i < 40; ++i)
    eval_lines.push_back("block " + std::to_string(i) + " replicated");

  auto [records, total] = corpus_of(eval_lines);
  auto windows = make_windows(std::move(records), total, 1024);
  EntropyTimeline timeline = score_timeline(model, windows, masker);
  REQUIRE(timeline.points.size() >= 3);

  double max_unseen = 0.0, max_seen = 0.0;
  for (const auto& p : timeline.points) {
    bool unseen_window = false;
    for (const auto& rec : windows[p.window].records)
      unseen_window |= rec.raw.find("kernel") != std::string::npos;
    (unseen_window ? max_unseen : max_seen) =
        std::max(unseen_window ? max_unseen : max_seen, p.entropy);
  }
  CHECK(max_unseen > max_seen);
}

TEST_CASE("score_timeline: MLE unseen event names the window") {
  Masker masker = Masker::standard();
  std::vector<std::string> train_lines(50, "all systems nominal");
  NGramModel model = train_on(train_lines, 2, 0.0, masker);

  std::vector<std::string> eval_lines(30, "all systems nominal");
  eval_lines.push_back("gremlins");
  auto [records, total] = corpus_of(eval_lines);
  auto windows = make_windows(std::move(records), total, 256);

  try {
    score_timeline(model, windows, masker);
    FAIL("expected UnseenEventError");
  } catch (const UnseenEventError& e) {
    CHECK(e.window() == windows.size() - 1);
    CHECK(std::string(e.what()).find("window") != std::string::npos);
  }
}

TEST_CASE("score_timeline: empty windows are flagged and score zero") {
  Masker masker = Masker::standard();
  NGramModel model = train_on({"alpha beta"}, 2, 1.0, masker);

  std::vector<std::string> lines = {"", "", "", ""};
  auto [records, total] = corpus_of(lines);
  auto windows = make_windows(std::move(records), total, 2);
  EntropyTimeline timeline = score_timeline(model, windows, masker);
  REQUIRE(!timeline.points.empty());
  for (const auto& p : timeline.points) {
    CHECK(p.empty);
    CHECK(p.entropy == 0.0);
    CHECK(p.tokens == 0);
  }
}

TEST_CASE("score_timeline: parallel equals sequential bit for bit") {
  Masker masker = Masker::standard();
  std::vector<std::string> lines;
  for (int i = 0; i < 300; ++i)
    lines.push_back("stage " + std::to_string(i % 7) + " event " +
                    std::to_string(i * 31) + " took " +
                    std::to_string(i * 13 % 997) + " ms");
  NGramModel model = train_on(lines, 4, 1.0, masker);

  auto [records, total] = corpus_of(lines);
  auto windows = make_windows(std::move(records), total, 512);

  EntropyTimeline seq = score_timeline(model, windows, masker, 1);
  EntropyTimeline par = score_timeline(model, windows, masker, 4);
  REQUIRE(seq.points.size() == par.points.size());
  for (std::size_t i = 0; i < seq.points.size(); ++i) {
    CHECK(seq.points[i].entropy == par.points[i].entropy);  // exact
    CHECK(seq.points[i].tokens == par.points[i].tokens);
  }
}

TEST_CASE("export_timeline: row count, formatting, empty case") {
  EntropyTimeline timeline;
  timeline.points.push_back({0, 0, 4096, 700, 1.25, false});
  timeline.points.push_back({1, 4096, 8192, 650, 0.5, false});
  std::string csv = export_timeline(timeline);

  std::size_t lines = 0;
  for (char c : csv) lines += (c == '\n');
  CHECK(lines == 3);  // header + 2 rows
  CHECK(csv.find("window,start,end,tokens,entropy\n") == 0);
  CHECK(csv.find("0,0,4096,700,1.250000\n") != std::string::npos);

  EntropyTimeline empty;
  CHECK(export_timeline(empty) == "window,start,end,tokens,entropy\n");
}

TEST_CASE("parse_timeline round trip and validation") {
  EntropyTimeline timeline;
  timeline.points.push_back({0, 0, 4096, 700, 1.25, false});
  timeline.points.push_back({1, 4096, 8192, 0, 0.0, true});
  EntropyTimeline parsed = parse_timeline(export_timeline(timeline));
  REQUIRE(parsed.points.size() == 2);
  CHECK(parsed.points[0].entropy == doctest::Approx(1.25));
  CHECK(parsed.points[1].empty);

  CHECK_THROWS_AS(parse_timeline("nope\n"), InvalidInputError);
  CHECK_THROWS_AS(
      parse_timeline("window,start,end,tokens,entropy\n5,0,1,1,0.5\n"),
      InvalidInputError);
}
