// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#include "logent/timeline.hpp"

#include <cstdio>
#include <sstream>
#include <thread>

#include "logent/error.hpp"
#include "logent/tokenize.hpp"

namespace logent {

namespace {

TimelinePoint score_one(const NGramModel& model, const LogWindow& window,
                        const Masker& masker) {
  TimelinePoint point;
  point.window = window.index;
  point.begin = window.begin;
  point.end = window.end;

  double nll = 0.0;
  std::uint64_t tokens = 0;
  for (const auto& rec : window.records) {
    TokenSequence seq = tokenize(masker.apply(rec.raw));
    if (seq.tokens.empty()) continue;
    try {
      nll += model.record_nll(seq.tokens);
    } catch (const UnseenEventError& e) {
      UnseenEventError wrapped("window " + std::to_string(window.index) +
                                   ": " + e.what(),
                               e.position());
      wrapped.set_window(window.index);
      throw wrapped;
    }
    tokens += seq.tokens.size();
  }
  point.tokens = tokens;
  if (tokens == 0) {
    point.empty = true;
    point.entropy = 0.0;
  } else {
    point.entropy = nll / static_cast<double>(tokens);
  }
  return point;
}

}  // namespace

std::vector<double> EntropyTimeline::entropies() const {
  std::vector<double> values;
  values.reserve(points.size());
  for (const auto& p : points) values.push_back(p.entropy);
  return values;
}

EntropyTimeline score_timeline(const NGramModel& model,
                               const std::vector<LogWindow>& windows,
                               const Masker& masker, unsigned threads) {
  EntropyTimeline timeline;
  timeline.points.resize(windows.size());

  if (threads <= 1 || windows.size() < 2) {
    for (std::size_t i = 0; i < windows.size(); ++i)
      timeline.points[i] = score_one(model, windows[i], masker);
    return timeline;
  }

  // Contiguous shards; assembly by index keeps output order-independent
  // of the thread count.
  unsigned nthreads = std::min<unsigned>(
      threads, static_cast<unsigned>(windows.size()));
  std::vector<std::exception_ptr> errors(nthreads);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (unsigned t = 0; t < nthreads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < windows.size(); i += nthreads)
          timeline.points[i] = score_one(model, windows[i], masker);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
  return timeline;
}

std::string export_timeline(const EntropyTimeline& timeline) {
  std::string out = "window,start,end,tokens,entropy\n";
  char buf[160];
  for (const auto& p : timeline.points) {
    std::snprintf(buf, sizeof(buf), "%zu,%llu,%llu,%llu,%.6f\n", p.window,
                  static_cast<unsigned long long>(p.begin),
                  static_cast<unsigned long long>(p.end),
                  static_cast<unsigned long long>(p.tokens), p.entropy);
    out += buf;
  }
  return out;
}

EntropyTimeline parse_timeline(std::string_view csv) {
  std::istringstream in{std::string(csv)};
  std::string line;
  if (!std::getline(in, line) || line != "window,start,end,tokens,entropy")
    throw InvalidInputError("timeline csv: bad or missing header");

  EntropyTimeline timeline;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    TimelinePoint p;
    unsigned long long w, b, e, t;
    double entropy;
    if (std::sscanf(line.c_str(), "%llu,%llu,%llu,%llu,%lf", &w, &b, &e, &t,
                    &entropy) != 5)
      throw ParseError("bad timeline row '" + line + "'", line_no);
    p.window = static_cast<std::size_t>(w);
    p.begin = b;
    p.end = e;
    p.tokens = t;
    p.entropy = entropy;
    p.empty = (t == 0);
    if (p.window != timeline.points.size())
      throw InvalidInputError("timeline csv: window indices must be 0..k-1");
    timeline.points.push_back(p);
  }
  return timeline;
}

}  // namespace logent
