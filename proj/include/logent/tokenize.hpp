// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace logent {

// A masked, tokenized view of a span of log text; the unit the language
// model consumes.
struct TokenSequence {
  std::vector<std::string> tokens;
  std::uint64_t span_begin = 0;
  std::uint64_t span_end = 0;
};

// Splits on runs of whitespace. Placeholders survive as single tokens;
// non-ASCII bytes pass through untouched.
TokenSequence tokenize(std::string_view text, std::uint64_t span_begin = 0);

}  // namespace logent
