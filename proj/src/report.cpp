// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#include "logent/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "logent/error.hpp"
#include "logent/hampel.hpp"

namespace logent {

namespace {

double round6(double v) { return std::round(v * 1e6) / 1e6; }

// Maximal runs of anomalous labels.
std::vector<std::pair<std::size_t, std::size_t>> label_runs(
    const std::vector<bool>& anomalous) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t i = 0; i < anomalous.size(); ++i) {
    if (!anomalous[i]) continue;
    if (!runs.empty() && runs.back().second + 1 == i)
      runs.back().second = i;
    else
      runs.emplace_back(i, i);
  }
  return runs;
}

}  // namespace

DetectionReport evaluate(const std::vector<std::size_t>& flags,
                         const std::vector<bool>& anomalous,
                         std::size_t gap_bridge) {
  DetectionReport report;
  report.window_count = anomalous.size();
  report.flagged = flags;
  std::sort(report.flagged.begin(), report.flagged.end());
  report.flagged.erase(
      std::unique(report.flagged.begin(), report.flagged.end()),
      report.flagged.end());
  if (!report.flagged.empty() && report.flagged.back() >= anomalous.size())
    throw InvalidInputError("flagged index " +
                            std::to_string(report.flagged.back()) +
                            " outside the labeled window range");
  report.regions = merge_regions(report.flagged, gap_bridge);

  std::vector<bool> is_flagged(anomalous.size(), false);
  for (std::size_t idx : report.flagged) is_flagged[idx] = true;
  for (std::size_t i = 0; i < anomalous.size(); ++i) {
    if (is_flagged[i])
      anomalous[i] ? ++report.tp : ++report.fp;
    else
      anomalous[i] ? ++report.fn : ++report.tn;
  }

  // Degenerate denominators resolve vacuously: with nothing to find (or
  // nothing flagged and nothing missed) the rate is perfect.
  report.precision = (report.tp + report.fp) > 0
                         ? double(report.tp) / double(report.tp + report.fp)
                         : (report.fn == 0 ? 1.0 : 0.0);
  report.recall = (report.tp + report.fn) > 0
                      ? double(report.tp) / double(report.tp + report.fn)
                      : (report.fp == 0 ? 1.0 : 0.0);
  report.f_measure = (report.precision + report.recall) > 0
                         ? 2.0 * report.precision * report.recall /
                               (report.precision + report.recall)
                         : 0.0;
  double sensitivity = (report.tp + report.fn) > 0
                           ? double(report.tp) / double(report.tp + report.fn)
                           : 1.0;
  double specificity = (report.tn + report.fp) > 0
                           ? double(report.tn) / double(report.tn + report.fp)
                           : 1.0;
  report.balanced_accuracy = 0.5 * sensitivity + 0.5 * specificity;

  auto runs = label_runs(anomalous);
  if (runs.empty()) {
    report.region_recall = 1.0;
  } else {
    std::size_t hit = 0;
    for (const auto& [lo, hi] : runs) {
      bool overlapped = std::any_of(
          report.flagged.begin(), report.flagged.end(),
          [lo = lo, hi = hi](std::size_t f) { return f >= lo && f <= hi; });
      if (overlapped) ++hit;
    }
    report.region_recall = double(hit) / double(runs.size());
  }
  return report;
}

std::vector<bool> window_labels(const std::vector<LogWindow>& windows) {
  std::vector<bool> labels(windows.size(), false);
  for (std::size_t i = 0; i < windows.size(); ++i)
    labels[i] = std::any_of(
        windows[i].records.begin(), windows[i].records.end(),
        [](const LogRecord& r) { return r.label == Label::Anomalous; });
  return labels;
}

std::string window_labels_to_csv(const std::vector<bool>& labels) {
  std::string out = "window,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out += std::to_string(i);
    out += labels[i] ? ",anomalous\n" : ",normal\n";
  }
  return out;
}

std::vector<bool> parse_window_labels(std::string_view csv) {
  std::istringstream in{std::string(csv)};
  std::string line;
  if (!std::getline(in, line) || line != "window,label")
    throw InvalidInputError("labels csv: bad or missing header");

  std::vector<bool> labels;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ParseError("bad label row '" + line + "'", line_no);
    std::size_t idx = std::stoull(line.substr(0, comma));
    std::string value = line.substr(comma + 1);
    if (idx != labels.size())
      throw InvalidInputError("labels csv: window indices must be 0..k-1");
    if (value == "anomalous")
      labels.push_back(true);
    else if (value == "normal")
      labels.push_back(false);
    else
      throw ParseError("bad label value '" + value + "'", line_no);
  }
  return labels;
}

double byte_region_recall(
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& truth_spans,
    const EntropyTimeline& timeline, const std::vector<std::size_t>& flags) {
  if (truth_spans.empty()) return 1.0;
  std::size_t hit = 0;
  for (const auto& [lo, hi] : truth_spans) {
    bool overlapped = false;
    for (std::size_t f : flags) {
      if (f >= timeline.points.size()) continue;
      const auto& p = timeline.points[f];
      if (p.begin < hi && lo < p.end) {
        overlapped = true;
        break;
      }
    }
    if (overlapped) ++hit;
  }
  return double(hit) / double(truth_spans.size());
}

std::string report_to_json(const DetectionReport& report, bool with_metrics) {
  nlohmann::ordered_json doc;
  doc["windows"] = report.window_count;
  doc["flagged"] = report.flagged;
  auto regions = nlohmann::ordered_json::array();
  for (const auto& [lo, hi] : report.regions)
    regions.push_back({lo, hi});
  doc["regions"] = regions;
  if (with_metrics) {
    doc["confusion"] = {{"tp", report.tp},
                        {"fp", report.fp},
                        {"fn", report.fn},
                        {"tn", report.tn}};
    doc["metrics"] = {{"precision", round6(report.precision)},
                      {"recall", round6(report.recall)},
                      {"f_measure", round6(report.f_measure)},
                      {"balanced_accuracy", round6(report.balanced_accuracy)},
                      {"region_recall", round6(report.region_recall)}};
  }
  return doc.dump(2) + "\n";
}

}  // namespace logent
