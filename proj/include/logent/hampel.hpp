// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <utility>
#include <vector>

namespace logent {

// Hampel outlier filter configuration. A point is flagged when its
// deviation from the local median exceeds k * scale * MAD of the
// neighborhood (up to 2*half_width+1 points, truncated at the edges;
// series shorter than a full neighborhood use the whole series).
// One-sided mode flags only positive deviations.
struct HampelConfig {
  std::size_t half_width = 10;
  double k = 3.0;
  double scale = 1.4826;  // MAD-to-sigma for a normal distribution
  bool one_sided = true;
};

// Flagged indices, ascending.
std::vector<std::size_t> hampel_flag(std::span<const double> series,
                                     const HampelConfig& cfg = {});

// Merges flagged indices into maximal runs; gaps of up to gap_bridge
// missing indices are bridged.
std::vector<std::pair<std::size_t, std::size_t>> merge_regions(
    std::span<const std::size_t> flags, std::size_t gap_bridge = 0);

}  // namespace logent
