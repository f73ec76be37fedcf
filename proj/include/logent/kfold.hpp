// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace logent {

// Cross-validation plan. holdout_fraction of 0 means "derive from
// fold_count" (1/fold_count); a nonzero value must be consistent with the
// fold partition to within one record.
struct SplitPlan {
  std::size_t fold_count = 10;
  double holdout_fraction = 0.0;
  std::uint64_t seed = 0;
};

struct FoldSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Deterministic k-fold partition of [0, record_count). Test sets are
// disjoint and exhaustive; the same seed always produces the same splits.
std::vector<FoldSplit> kfold_split(std::size_t record_count,
                                   const SplitPlan& plan);

}  // namespace logent
