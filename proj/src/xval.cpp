// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#include "logent/xval.hpp"

#include <cstdio>

#include "logent/error.hpp"
#include "logent/ngram.hpp"

namespace logent {

std::vector<XvalRow> xval_sweep(const std::vector<TokenSequence>& records,
                                unsigned order_min, unsigned order_max,
                                const SplitPlan& plan, double alpha) {
  if (order_min < 1 || order_min > order_max)
    throw ConfigError("bad order range");

  auto folds = kfold_split(records.size(), plan);

  std::vector<XvalRow> rows;
  rows.reserve(order_max - order_min + 1);
  for (unsigned order = order_min; order <= order_max; ++order) {
    double fold_sum = 0.0;
    std::size_t fold_used = 0;
    for (const auto& fold : folds) {
      NGramTrainer trainer(order, alpha);
      for (std::size_t idx : fold.train) trainer.add(records[idx]);
      NGramModel model = trainer.finish();

      double nll = 0.0;
      std::uint64_t tokens = 0;
      for (std::size_t idx : fold.test) {
        if (records[idx].tokens.empty()) continue;
        nll += model.record_nll(records[idx].tokens);
        tokens += records[idx].tokens.size();
      }
      if (tokens == 0) continue;  // fold held only empty records
      fold_sum += nll / static_cast<double>(tokens);
      ++fold_used;
    }
    if (fold_used == 0)
      throw InvalidInputError("cross-validation: no scorable test tokens");
    rows.push_back({order, fold_sum / static_cast<double>(fold_used)});
  }
  return rows;
}

std::string export_xval_csv(const std::vector<XvalRow>& rows) {
  std::string out = "n,mean_entropy\n";
  char buf[64];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof(buf), "%u,%.6f\n", row.order, row.mean_entropy);
    out += buf;
  }
  return out;
}

}  // namespace logent
