// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "logent/mask.hpp"
#include "logent/ngram.hpp"
#include "logent/window.hpp"

namespace logent {

struct TimelinePoint {
  std::size_t window = 0;
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
  std::uint64_t tokens = 0;
  double entropy = 0.0;  // bits/token
  bool empty = false;    // window held no tokens; entropy reported as 0
};

// Ordered per-window entropy values for one corpus under one model.
struct EntropyTimeline {
  std::string model_id;
  std::string corpus_id;
  std::vector<TimelinePoint> points;

  std::vector<double> entropies() const;
};

// Scores each window independently: records are masked, tokenized and
// scored per record; the window entropy is the token-weighted mean of its
// records' entropies. Windows may be scored on several threads; the result
// is identical to a sequential pass. MLE unseen events propagate as
// UnseenEventError with the window index attached.
EntropyTimeline score_timeline(const NGramModel& model,
                               const std::vector<LogWindow>& windows,
                               const Masker& masker, unsigned threads = 1);

// One row per window, 6-decimal entropies, header
// "window,start,end,tokens,entropy".
std::string export_timeline(const EntropyTimeline& timeline);

EntropyTimeline parse_timeline(std::string_view csv);

}  // namespace logent
