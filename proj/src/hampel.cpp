// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#include "logent/hampel.hpp"

#include <algorithm>
#include <cmath>

#include "logent/error.hpp"

namespace logent {

namespace {

double median_inplace(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::vector<std::size_t> hampel_flag(std::span<const double> series,
                                     const HampelConfig& cfg) {
  if (cfg.half_width < 1) throw ConfigError("hampel half_width must be >= 1");
  if (cfg.k <= 0.0) throw ConfigError("hampel k must be > 0");
  if (cfg.scale <= 0.0) throw ConfigError("hampel scale must be > 0");

  std::vector<std::size_t> flags;
  const std::size_t n = series.size();
  if (n == 0) return flags;

  const bool full_series = n < 2 * cfg.half_width + 1;
  std::vector<double> buf;
  buf.reserve(std::min<std::size_t>(n, 2 * cfg.half_width + 1));

  for (std::size_t i = 0; i < n; ++i) {
    std::size_t lo = full_series ? 0 : (i >= cfg.half_width ? i - cfg.half_width : 0);
    std::size_t hi = full_series ? n : std::min(n, i + cfg.half_width + 1);

    buf.assign(series.begin() + lo, series.begin() + hi);
    double med = median_inplace(buf);
    for (auto& v : buf) v = std::abs(v - med);
    double mad = median_inplace(buf);

    double dev = cfg.one_sided ? series[i] - med : std::abs(series[i] - med);
    // MAD of 0 degenerates cleanly: any positive deviation flags.
    if (dev > cfg.k * cfg.scale * mad) flags.push_back(i);
  }
  return flags;
}

std::vector<std::pair<std::size_t, std::size_t>> merge_regions(
    std::span<const std::size_t> flags, std::size_t gap_bridge) {
  std::vector<std::size_t> sorted(flags.begin(), flags.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<std::pair<std::size_t, std::size_t>> regions;
  for (std::size_t idx : sorted) {
    if (!regions.empty() && idx <= regions.back().second + gap_bridge + 1)
      regions.back().second = idx;
    else
      regions.emplace_back(idx, idx);
  }
  return regions;
}

}  // namespace logent
