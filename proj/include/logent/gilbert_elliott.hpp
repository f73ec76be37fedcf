// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "logent/rng.hpp"

namespace logent {

enum class GeState { Good, Bad };

// Two-state Markov channel with state-dependent error rates, modeling
// bursty communication impairment.
struct GilbertElliottParams {
  double good_to_bad = 0.15;     // transition probability per step
  double bad_to_good = 0.02;
  double error_rate_good = 0.01;
  double error_rate_bad = 0.30;

  void validate() const;  // all four in [0, 1]

  // Long-run fraction of steps spent in Bad: p / (p + r).
  double bad_occupancy() const;
  // Long-run error rate under the stationary distribution.
  double steady_error_rate() const;
};

struct GeStep {
  GeState state;  // state after the transition
  bool error;     // drawn with the pre-transition state's error rate
};

// Advances the chain one step. Consumes exactly two draws from `rng`
// regardless of the outcome, so error sets grow monotonically when only
// the error rates change.
GeStep ge_step(GeState current, const GilbertElliottParams& params, Rng& rng);

}  // namespace logent
