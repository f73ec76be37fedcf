// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const char* cli_path() { return LOGENT_CLI_PATH; }

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("logent-cli-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

int run(const std::string& args, const TempDir& dir) {
  std::string cmd = std::string(cli_path()) + " " + args + " >> " +
                    dir.file("stdout.log") + " 2>> " + dir.file("stderr.log");
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void write(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

std::size_t line_count(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += (c == '\n');
  return n;
}

}  // namespace

TEST_CASE("cli: gen writes corpus, truth and labels; deterministic") {
  TempDir dir;
  write(dir.file("spec.json"),
        R"({"seed":5,"duration_ms":8000})");

  REQUIRE(run("gen " + dir.file("spec.json") + " " + dir.file("out1"), dir) == 0);
  REQUIRE(run("gen " + dir.file("spec.json") + " " + dir.file("out2"), dir) == 0);

  auto truth = json::parse(slurp(dir.file("out1/truth.json")));
  CHECK(truth.is_array());
  CHECK(truth.empty());  // no failure spec, no regions

  CHECK(slurp(dir.file("out1/corpus.jsonl")) ==
        slurp(dir.file("out2/corpus.jsonl")));
  CHECK(slurp(dir.file("out1/labels.csv")) ==
        slurp(dir.file("out2/labels.csv")));
  CHECK(slurp(dir.file("out1/labels.csv")).rfind("window,label\n", 0) == 0);
}

TEST_CASE("cli: gen rejects an insufficient roster with a field name") {
  TempDir dir;
  write(dir.file("spec.json"),
        R"({"seed":1,"duration_ms":5000,
            "nodes":[{"role":"master","id":"solo"}],
            "failure":{"kind":"combined","target":"solo","onset_ms":1000}})");
  CHECK(run("gen " + dir.file("spec.json") + " " + dir.file("out"), dir) != 0);
  CHECK(slurp(dir.file("stderr.log")).find("field") != std::string::npos);
}

TEST_CASE("cli: train/score/detect pipeline on the openstack preset") {
  TempDir dir;
  write(dir.file("spec.json"), R"({"preset":"openstack52","seed":1})");
  REQUIRE(run("gen " + dir.file("spec.json") + " " + dir.file("out"), dir) == 0);

  REQUIRE(run("train " + dir.file("out/train.jsonl") + " " +
                  dir.file("model.txt"),
              dir) == 0);
  // default order is 5
  CHECK(slurp(dir.file("stdout.log")).find("order 5") != std::string::npos);

  REQUIRE(run("score " + dir.file("model.txt") + " " +
                  dir.file("out/corpus.jsonl") + " " + dir.file("timeline.csv"),
              dir) == 0);
  std::string timeline = slurp(dir.file("timeline.csv"));
  CHECK(line_count(timeline) == 53);  // header + 52 windows

  // the timeline maxima sit inside the injected anomaly span
  {
    std::istringstream rows(timeline);
    std::string row;
    std::getline(rows, row);  // header
    std::size_t argmax = 0;
    double best = -1.0;
    while (std::getline(rows, row)) {
      auto last_comma = row.rfind(',');
      double entropy = std::stod(row.substr(last_comma + 1));
      std::size_t window = std::stoull(row.substr(0, row.find(',')));
      if (entropy > best) {
        best = entropy;
        argmax = window;
      }
    }
    CHECK(argmax >= 24);
    CHECK(argmax <= 27);
  }

  REQUIRE(run("detect " + dir.file("timeline.csv") + " " +
                  dir.file("report.json") + " --labels " +
                  dir.file("out/labels.csv"),
              dir) == 0);
  auto report = json::parse(slurp(dir.file("report.json")));
  CHECK(report["windows"] == 52);
  CHECK(report["metrics"]["recall"] == 1.0);
  CHECK(report["metrics"]["f_measure"].get<double>() ==
        doctest::Approx(0.888889).epsilon(1e-4));
}

TEST_CASE("cli: score fails cleanly on a missing model") {
  TempDir dir;
  write(dir.file("corpus.jsonl"), R"({"msg":"hello there"})" "\n");
  CHECK(run("score " + dir.file("nope.model") + " " + dir.file("corpus.jsonl") +
                " " + dir.file("t.csv"),
            dir) != 0);
}

TEST_CASE("cli: MLE scoring of unseen content exits nonzero naming the window") {
  TempDir dir;
  std::string train;
  for (int i = 0; i < 50; ++i) train += "steady state heartbeat\n";
  write(dir.file("train.log"), train);
  REQUIRE(run("train " + dir.file("train.log") + " " + dir.file("m.txt") +
                  " --format plain --alpha 0",
              dir) == 0);

  write(dir.file("eval.log"), train + "gremlins in the machinery\n");
  CHECK(run("score " + dir.file("m.txt") + " " + dir.file("eval.log") +
                " " + dir.file("t.csv") + " --format plain",
            dir) != 0);
  CHECK(slurp(dir.file("stderr.log")).find("window") != std::string::npos);
}

TEST_CASE("cli: train on an empty corpus warns and writes a degenerate model") {
  TempDir dir;
  write(dir.file("empty.log"), "");
  REQUIRE(run("train " + dir.file("empty.log") + " " + dir.file("m.txt") +
                  " --format plain",
              dir) == 0);
  CHECK(slurp(dir.file("stderr.log")).find("degenerate") != std::string::npos);
  CHECK(slurp(dir.file("m.txt")).rfind("logent-ngram-v1\n", 0) == 0);
}

TEST_CASE("cli: detect without labels omits metrics") {
  TempDir dir;
  std::string csv = "window,start,end,tokens,entropy\n";
  for (int i = 0; i < 30; ++i)
    csv += std::to_string(i) + "," + std::to_string(i * 100) + "," +
           std::to_string((i + 1) * 100) + ",10,0.500000\n";
  write(dir.file("flat.csv"), csv);

  REQUIRE(run("detect " + dir.file("flat.csv") + " " + dir.file("report.json"),
              dir) == 0);
  auto report = json::parse(slurp(dir.file("report.json")));
  CHECK(report["flagged"].empty());  // constant series
  CHECK(!report.contains("metrics"));
}

TEST_CASE("cli: detect label length mismatch is an error") {
  TempDir dir;
  write(dir.file("t.csv"),
        "window,start,end,tokens,entropy\n0,0,100,10,0.500000\n");
  write(dir.file("l.csv"), "window,label\n0,normal\n1,normal\n");
  CHECK(run("detect " + dir.file("t.csv") + " " + dir.file("r.json") +
                " --labels " + dir.file("l.csv"),
            dir) != 0);
}

TEST_CASE("cli: xval table shape and determinism") {
  TempDir dir;
  std::string corpus;
  for (int i = 0; i < 40; ++i) {
    corpus += "job step " + std::to_string(i % 4) + " finished in " +
              std::to_string(i * 17) + " ms\n";
  }
  write(dir.file("corpus.log"), corpus);

  std::string args = "xval " + dir.file("corpus.log") + " " +
                     dir.file("xval1.csv") +
                     " --format plain --folds 5 --seed 3";
  REQUIRE(run(args, dir) == 0);
  REQUIRE(run("xval " + dir.file("corpus.log") + " " + dir.file("xval2.csv") +
                  " --format plain --folds 5 --seed 3",
              dir) == 0);
  std::string table = slurp(dir.file("xval1.csv"));
  CHECK(table.rfind("n,mean_entropy\n", 0) == 0);
  CHECK(line_count(table) == 9);  // header + n in 1..8
  CHECK(table == slurp(dir.file("xval2.csv")));
}

TEST_CASE("cli: xval with too few records fails") {
  TempDir dir;
  write(dir.file("tiny.log"), "a b\nc d\n");
  CHECK(run("xval " + dir.file("tiny.log") + " " + dir.file("x.csv") +
                " --format plain --folds 10",
            dir) != 0);
}

TEST_CASE("cli: config file values yield to flags") {
  TempDir dir;
  write(dir.file("conf"), "order = 3\nalpha = 0.5\n");
  std::string corpus;
  for (int i = 0; i < 10; ++i) corpus += "alpha beta gamma\n";
  write(dir.file("c.log"), corpus);

  REQUIRE(run("train " + dir.file("c.log") + " " + dir.file("m1.txt") +
                  " --format plain --config " + dir.file("conf"),
              dir) == 0);
  CHECK(slurp(dir.file("m1.txt")).find("order 3") != std::string::npos);

  REQUIRE(run("train " + dir.file("c.log") + " " + dir.file("m2.txt") +
                  " --format plain --config " + dir.file("conf") +
                  " --order 2",
              dir) == 0);
  CHECK(slurp(dir.file("m2.txt")).find("order 2") != std::string::npos);
}

TEST_CASE("cli: commands do not mutate their inputs") {
  TempDir dir;
  write(dir.file("spec.json"), R"({"seed":2,"duration_ms":6000})");
  std::string before = slurp(dir.file("spec.json"));
  REQUIRE(run("gen " + dir.file("spec.json") + " " + dir.file("out"), dir) == 0);
  CHECK(slurp(dir.file("spec.json")) == before);

  std::string corpus_before = slurp(dir.file("out/corpus.jsonl"));
  REQUIRE(run("train " + dir.file("out/corpus.jsonl") + " " + dir.file("m.txt"),
              dir) == 0);
  CHECK(slurp(dir.file("out/corpus.jsonl")) == corpus_before);
}
