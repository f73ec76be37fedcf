// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "logent/error.hpp"
#include "logent/gilbert_elliott.hpp"
#include "logent/rng.hpp"

using namespace logent;

TEST_CASE("ge_step: absorbing parameters never leave Good, never error") {
  GilbertElliottParams params{0.0, 0.0, 0.0, 1.0};
  Rng rng(5);
  GeState state = GeState::Good;
  for (int i = 0; i < 1000; ++i) {
    auto step = ge_step(state, params, rng);
    CHECK(step.state == GeState::Good);
    CHECK(!step.error);
    state = step.state;
  }
}

TEST_CASE("ge_step: unit transition probabilities alternate deterministically") {
  GilbertElliottParams params{1.0, 1.0, 0.0, 0.0};
  Rng rng(6);
  GeState state = GeState::Good;
  for (int i = 0; i < 100; ++i) {
    auto step = ge_step(state, params, rng);
    CHECK(step.state != state);
    state = step.state;
  }
}

TEST_CASE("ge_step: steady state matches the two-state Markov analysis") {
  // the example configuration: r=2%, p=15%, bad error 30%, good error 1%
  GilbertElliottParams params{0.15, 0.02, 0.01, 0.30};
  CHECK(params.bad_occupancy() == doctest::Approx(0.15 / 0.17).epsilon(1e-12));
  CHECK(params.steady_error_rate() ==
        doctest::Approx((0.02 / 0.17) * 0.01 + (0.15 / 0.17) * 0.30)
            .epsilon(1e-12));

  Rng rng(7);
  GeState state = GeState::Good;
  const int steps = 1000000;
  std::int64_t bad = 0, errors = 0;
  for (int i = 0; i < steps; ++i) {
    bad += (state == GeState::Bad);  // occupancy of the pre-transition state
    auto step = ge_step(state, params, rng);
    errors += step.error;
    state = step.state;
  }
  double bad_rate = double(bad) / steps;
  double err_rate = double(errors) / steps;
  CHECK(bad_rate == doctest::Approx(params.bad_occupancy()).epsilon(0.005));
  CHECK(err_rate == doctest::Approx(params.steady_error_rate()).epsilon(0.03));
}

TEST_CASE("ge_step: error sets grow monotonically with the bad error rate") {
  // Same seed, same chain trajectory; only the error threshold moves.
  for (double lo : {0.0, 0.1, 0.2}) {
    double hi = lo + 0.15;
    GilbertElliottParams a{0.15, 0.02, 0.01, lo};
    GilbertElliottParams b{0.15, 0.02, 0.01, hi};
    Rng ra(11), rb(11);
    GeState sa = GeState::Good, sb = GeState::Good;
    for (int i = 0; i < 20000; ++i) {
      auto stepa = ge_step(sa, a, ra);
      auto stepb = ge_step(sb, b, rb);
      CHECK(stepa.state == stepb.state);
      if (stepa.error) CHECK(stepb.error);  // superset
      sa = stepa.state;
      sb = stepb.state;
    }
  }
}

TEST_CASE("ge params validate") {
  GilbertElliottParams bad{1.5, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  GilbertElliottParams neg{0.1, -0.1, 0.0, 0.0};
  CHECK_THROWS_AS(neg.validate(), ConfigError);
}
