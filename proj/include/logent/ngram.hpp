// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "logent/tokenize.hpp"

namespace logent {

// Order-n token language model over per-record token runs.
//
// Probability of a token given its n-1 predecessors is the count ratio
//   p(a | h) = count(h a) / count(h)
// optionally additive-smoothed with weight alpha:
//   p(a | h) = (count(h a) + alpha) / (count(h) + alpha * (|vocab| + 1))
// where the +1 accounts for a reserved unknown token. Records are padded
// on the left with a reserved start token, so every position carries a
// full history; n-grams never cross record boundaries.
//
// A trained model is immutable and safe to share across threads.
class NGramModel {
 public:
  using TokenId = std::uint32_t;

  NGramModel() = default;  // degenerate: order 1, empty vocab

  unsigned order() const { return order_; }
  double alpha() const { return alpha_; }
  std::size_t vocab_size() const { return id_to_token_.size(); }
  std::uint64_t total_tokens() const { return total_tokens_; }

  // Conditional probability of `next` after `history`. Histories shorter
  // than order-1 are left-padded with the start token; longer ones use
  // their last order-1 tokens. Tokens outside the vocabulary map to the
  // unknown token. With alpha == 0, an unseen history or n-gram raises
  // UnseenEventError.
  double prob(std::span<const std::string> history, std::string_view next) const;

  // Eq.-style sequence entropy: -(1/N) sum log2 p(a_i | history), in
  // bits/token. Empty sequences raise InvalidInputError.
  double sequence_entropy(const TokenSequence& seq) const;

  // Total -log2 probability of a token run (one record). Used to combine
  // records into token-weighted window entropies.
  double record_nll(const std::vector<std::string>& tokens) const;

  // Raw counts, mainly for tests and diagnostics.
  std::uint64_t gram_count(std::span<const std::string> history,
                           std::string_view next) const;
  std::uint64_t history_count(std::span<const std::string> history) const;

  // Vocabulary in id order.
  const std::vector<std::string>& vocab() const { return id_to_token_; }

  // Versioned, self-describing text format. load(save(m)) is
  // observationally identical to m; corrupt or truncated input raises
  // LoadError and yields no partial model.
  void save(std::ostream& out) const;
  static NGramModel load(std::istream& in);

 private:
  friend class NGramTrainer;

  static constexpr TokenId kStartId = 0;
  static constexpr TokenId kUnknownId = static_cast<TokenId>(-1);

  struct Successors {
    std::uint64_t total = 0;
    std::unordered_map<TokenId, std::uint64_t> counts;
  };
  // One table per history length 0..order-1; keys are packed id bytes.
  using Table = std::unordered_map<std::string, Successors>;

  TokenId lookup(std::string_view token) const;
  static std::string pack(std::span<const TokenId> ids);
  double prob_ids(std::span<const TokenId> history, TokenId next,
                  std::size_t position) const;

  unsigned order_ = 1;
  double alpha_ = 1.0;
  std::uint64_t total_tokens_ = 0;
  std::unordered_map<std::string, TokenId> token_to_id_;
  std::vector<std::string> id_to_token_;  // index = id - 1
  std::vector<Table> tables_;             // index = history length
};

// Single-writer accumulation; add() one record at a time, then finish().
class NGramTrainer {
 public:
  NGramTrainer(unsigned order, double alpha = 1.0);

  void add(const TokenSequence& record) { add(record.tokens); }
  void add(const std::vector<std::string>& tokens);

  NGramModel finish();

 private:
  NGramModel model_;
  bool finished_ = false;
};

// Convenience wrapper over NGramTrainer.
NGramModel train_ngram(const std::vector<TokenSequence>& records,
                       unsigned order, double alpha = 1.0);

// Shannon entropy of the byte distribution of a span, base 2, in [0, 8].
// Empty spans raise InvalidInputError.
double char_entropy(std::string_view bytes);

}  // namespace logent
