// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#include "logent/tokenize.hpp"

namespace logent {

namespace {

inline bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

}  // namespace

TokenSequence tokenize(std::string_view text, std::uint64_t span_begin) {
  TokenSequence seq;
  seq.span_begin = span_begin;
  seq.span_end = span_begin + text.size();

  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) seq.tokens.emplace_back(text.substr(start, i - start));
  }
  return seq;
}

}  // namespace logent
