// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#include "logent/gilbert_elliott.hpp"

#include "logent/error.hpp"

namespace logent {

void GilbertElliottParams::validate() const {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(good_to_bad)) throw ConfigError("ge: good_to_bad outside [0,1]");
  if (!in_unit(bad_to_good)) throw ConfigError("ge: bad_to_good outside [0,1]");
  if (!in_unit(error_rate_good))
    throw ConfigError("ge: error_rate_good outside [0,1]");
  if (!in_unit(error_rate_bad))
    throw ConfigError("ge: error_rate_bad outside [0,1]");
}

double GilbertElliottParams::bad_occupancy() const {
  double denom = good_to_bad + bad_to_good;
  if (denom == 0.0) return 0.0;  // chain never leaves its start state
  return good_to_bad / denom;
}

double GilbertElliottParams::steady_error_rate() const {
  double bad = bad_occupancy();
  return (1.0 - bad) * error_rate_good + bad * error_rate_bad;
}

GeStep ge_step(GeState current, const GilbertElliottParams& params, Rng& rng) {
  bool error = rng.chance(current == GeState::Good ? params.error_rate_good
                                                   : params.error_rate_bad);
  bool transition = rng.chance(current == GeState::Good ? params.good_to_bad
                                                        : params.bad_to_good);
  GeState next = current;
  if (transition)
    next = current == GeState::Good ? GeState::Bad : GeState::Good;
  return {next, error};
}

}  // namespace logent
