// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "logent/timeline.hpp"
#include "logent/window.hpp"

namespace logent {

// Per-window confusion matrix and derived metrics for a set of flagged
// windows against ground-truth labels.
struct DetectionReport {
  std::size_t window_count = 0;
  std::vector<std::size_t> flagged;
  std::vector<std::pair<std::size_t, std::size_t>> regions;

  std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  double balanced_accuracy = 0.0;

  // Fraction of ground-truth label runs overlapped by at least one
  // flagged window. Secondary statistic; the primary metrics above are
  // per-window.
  double region_recall = 0.0;
};

// `anomalous[i]` is the ground truth for window i; every flag must index a
// labeled window or the call raises InvalidInputError.
DetectionReport evaluate(const std::vector<std::size_t>& flags,
                         const std::vector<bool>& anomalous,
                         std::size_t gap_bridge = 0);

// A window is anomalous iff any record it contains is labeled anomalous.
std::vector<bool> window_labels(const std::vector<LogWindow>& windows);

// "window,label" CSV with values "normal" / "anomalous".
std::string window_labels_to_csv(const std::vector<bool>& labels);
std::vector<bool> parse_window_labels(std::string_view csv);

// Fraction of truth byte regions that overlap at least one flagged
// window's byte span.
double byte_region_recall(
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& truth_spans,
    const EntropyTimeline& timeline, const std::vector<std::size_t>& flags);

// JSON rendering; metrics are included only when `with_metrics` is set.
std::string report_to_json(const DetectionReport& report, bool with_metrics);

}  // namespace logent
