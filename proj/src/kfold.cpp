// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#include "logent/kfold.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "logent/error.hpp"
#include "logent/rng.hpp"

namespace logent {

std::vector<FoldSplit> kfold_split(std::size_t record_count,
                                   const SplitPlan& plan) {
  if (plan.fold_count < 2)
    throw ConfigError("fold_count must be >= 2");
  if (record_count < plan.fold_count)
    throw ConfigError("record count (" + std::to_string(record_count) +
                      ") is smaller than fold_count (" +
                      std::to_string(plan.fold_count) + ")");
  if (plan.holdout_fraction != 0.0) {
    if (plan.holdout_fraction <= 0.0 || plan.holdout_fraction >= 1.0)
      throw ConfigError("holdout_fraction must be in (0, 1)");
    double per_fold = static_cast<double>(record_count) /
                      static_cast<double>(plan.fold_count);
    if (std::abs(plan.holdout_fraction * static_cast<double>(record_count) -
                 per_fold) > 1.0)
      throw ConfigError("holdout_fraction is inconsistent with fold_count");
  }

  std::vector<std::size_t> indices(record_count);
  std::iota(indices.begin(), indices.end(), 0);
  Rng rng = Rng(plan.seed).fork("kfold");
  rng.shuffle(indices);

  std::vector<FoldSplit> folds(plan.fold_count);
  // Chunk boundaries differ by at most one record.
  std::size_t base = record_count / plan.fold_count;
  std::size_t extra = record_count % plan.fold_count;
  std::size_t pos = 0;
  for (std::size_t f = 0; f < plan.fold_count; ++f) {
    std::size_t size = base + (f < extra ? 1 : 0);
    folds[f].test.assign(indices.begin() + pos, indices.begin() + pos + size);
    pos += size;
  }
  for (std::size_t f = 0; f < plan.fold_count; ++f) {
    auto& train = folds[f].train;
    train.reserve(record_count - folds[f].test.size());
    for (std::size_t g = 0; g < plan.fold_count; ++g) {
      if (g == f) continue;
      train.insert(train.end(), folds[g].test.begin(), folds[g].test.end());
    }
    std::sort(folds[f].test.begin(), folds[f].test.end());
    std::sort(train.begin(), train.end());
  }
  return folds;
}

}  // namespace logent
