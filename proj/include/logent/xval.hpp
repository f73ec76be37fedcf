// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "logent/kfold.hpp"
#include "logent/tokenize.hpp"

namespace logent {

struct XvalRow {
  unsigned order = 0;
  double mean_entropy = 0.0;  // bits/token, averaged over folds
};

// For each order in [order_min, order_max], trains on each fold's training
// records and scores the held-out records (token-weighted over the fold),
// then averages the per-fold entropies.
std::vector<XvalRow> xval_sweep(const std::vector<TokenSequence>& records,
                                unsigned order_min, unsigned order_max,
                                const SplitPlan& plan, double alpha);

// CSV with header "n,mean_entropy"; entropies rendered to 6 decimals.
std::string export_xval_csv(const std::vector<XvalRow>& rows);

}  // namespace logent
