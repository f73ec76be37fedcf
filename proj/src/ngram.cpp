// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#include "logent/ngram.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "logent/error.hpp"

namespace logent {

namespace {

std::vector<NGramModel::TokenId> unpack_ids(const std::string& key);

// "expected x, found y" helper for the version line
std::string version_mismatch(const std::string& found) {
  return "bad model version: expected 'logent-ngram-v1', found '" + found + "'";
}

constexpr char kMagic[] = "logent-ngram-v1";

}  // namespace

NGramModel::TokenId NGramModel::lookup(std::string_view token) const {
  auto it = token_to_id_.find(std::string(token));
  return it == token_to_id_.end() ? kUnknownId : it->second;
}

std::string NGramModel::pack(std::span<const TokenId> ids) {
  std::string key;
  key.resize(ids.size() * sizeof(TokenId));
  std::size_t pos = 0;
  for (TokenId id : ids) {
    for (unsigned b = 0; b < sizeof(TokenId); ++b)
      key[pos++] = static_cast<char>((id >> (8 * b)) & 0xff);
  }
  return key;
}

namespace {

std::vector<NGramModel::TokenId> unpack_ids(const std::string& key) {
  using TokenId = NGramModel::TokenId;
  std::vector<TokenId> ids(key.size() / sizeof(TokenId));
  for (std::size_t i = 0; i < ids.size(); ++i) {
    TokenId id = 0;
    for (unsigned b = 0; b < sizeof(TokenId); ++b)
      id |= static_cast<TokenId>(static_cast<unsigned char>(
                key[i * sizeof(TokenId) + b]))
            << (8 * b);
    ids[i] = id;
  }
  return ids;
}

}  // namespace

double NGramModel::prob_ids(std::span<const TokenId> history, TokenId next,
                            std::size_t position) const {
  std::uint64_t hc = 0;
  std::uint64_t gc = 0;
  if (history.size() < tables_.size()) {
    const Table& table = tables_[history.size()];
    auto it = table.find(pack(history));
    if (it != table.end()) {
      hc = it->second.total;
      if (next != kUnknownId) {
        auto cit = it->second.counts.find(next);
        if (cit != it->second.counts.end()) gc = cit->second;
      }
    }
  }

  if (alpha_ == 0.0) {
    if (hc == 0)
      throw UnseenEventError("history never observed in training (position " +
                                 std::to_string(position) + ")",
                             position);
    if (gc == 0)
      throw UnseenEventError("n-gram never observed in training (position " +
                                 std::to_string(position) + ")",
                             position);
    return static_cast<double>(gc) / static_cast<double>(hc);
  }
  double denom = static_cast<double>(hc) +
                 alpha_ * (static_cast<double>(vocab_size()) + 1.0);
  return (static_cast<double>(gc) + alpha_) / denom;
}

double NGramModel::prob(std::span<const std::string> history,
                        std::string_view next) const {
  const std::size_t hlen = order_ - 1;
  std::vector<TokenId> ids(hlen, kStartId);
  // Use the last order-1 history tokens; left-pad the rest with start.
  std::size_t take = std::min(history.size(), hlen);
  for (std::size_t i = 0; i < take; ++i)
    ids[hlen - take + i] = lookup(history[history.size() - take + i]);
  return prob_ids(ids, lookup(next), 0);
}

double NGramModel::record_nll(const std::vector<std::string>& tokens) const {
  const std::size_t hlen = order_ - 1;
  std::vector<TokenId> padded(hlen + tokens.size(), kStartId);
  for (std::size_t i = 0; i < tokens.size(); ++i)
    padded[hlen + i] = lookup(tokens[i]);

  double nll = 0.0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::span<const TokenId> history(padded.data() + i, hlen);
    nll -= std::log2(prob_ids(history, padded[hlen + i], i));
  }
  return nll;
}

double NGramModel::sequence_entropy(const TokenSequence& seq) const {
  if (seq.tokens.empty())
    throw InvalidInputError("sequence_entropy: empty token sequence");
  return record_nll(seq.tokens) / static_cast<double>(seq.tokens.size());
}

std::uint64_t NGramModel::gram_count(std::span<const std::string> history,
                                     std::string_view next) const {
  if (history.size() >= tables_.size()) return 0;
  std::vector<TokenId> ids;
  ids.reserve(history.size());
  for (const auto& tok : history) {
    TokenId id = lookup(tok);
    if (id == kUnknownId) return 0;
    ids.push_back(id);
  }
  TokenId nid = lookup(next);
  if (nid == kUnknownId) return 0;
  auto it = tables_[ids.size()].find(pack(ids));
  if (it == tables_[ids.size()].end()) return 0;
  auto cit = it->second.counts.find(nid);
  return cit == it->second.counts.end() ? 0 : cit->second;
}

std::uint64_t NGramModel::history_count(
    std::span<const std::string> history) const {
  if (history.size() >= tables_.size()) return 0;
  std::vector<TokenId> ids;
  ids.reserve(history.size());
  for (const auto& tok : history) {
    TokenId id = lookup(tok);
    if (id == kUnknownId) return 0;
    ids.push_back(id);
  }
  auto it = tables_[ids.size()].find(pack(ids));
  return it == tables_[ids.size()].end() ? 0 : it->second.total;
}

void NGramModel::save(std::ostream& out) const {
  out << kMagic << "\n";
  out << "order " << order_ << "\n";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", alpha_);
  out << "alpha " << buf << "\n";
  out << "total_tokens " << total_tokens_ << "\n";
  out << "vocab " << id_to_token_.size() << "\n";
  for (const auto& tok : id_to_token_) out << tok << "\n";

  // Sorted output keeps model files byte-identical across runs.
  std::size_t histories = 0;
  for (const auto& table : tables_) histories += table.size();
  out << "histories " << histories << "\n";

  for (std::size_t len = 0; len < tables_.size(); ++len) {
    std::vector<std::pair<std::vector<TokenId>, const Successors*>> entries;
    entries.reserve(tables_[len].size());
    for (const auto& [key, succ] : tables_[len])
      entries.emplace_back(unpack_ids(key), &succ);
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    for (const auto& [ids, succ] : entries) {
      out << "h " << len;
      for (TokenId id : ids) out << " " << id;
      out << " " << succ->counts.size() << "\n";
      std::vector<std::pair<TokenId, std::uint64_t>> counts(
          succ->counts.begin(), succ->counts.end());
      std::sort(counts.begin(), counts.end());
      for (const auto& [id, count] : counts)
        out << id << " " << count << "\n";
    }
  }
  out << "end\n";
}

NGramModel NGramModel::load(std::istream& in) {
  NGramModel model;

  auto next_line = [&in](std::string& line) {
    if (!std::getline(in, line)) throw LoadError("model file truncated");
    if (!line.empty() && line.back() == '\r') line.pop_back();
  };

  std::string line;
  next_line(line);
  if (line != kMagic) throw LoadError(version_mismatch(line));

  auto expect_kv = [&](const char* key) -> std::string {
    std::string l;
    next_line(l);
    std::string prefix = std::string(key) + " ";
    if (l.rfind(prefix, 0) != 0)
      throw LoadError("expected '" + std::string(key) + "' line, found '" + l + "'");
    return l.substr(prefix.size());
  };

  try {
    model.order_ = static_cast<unsigned>(std::stoul(expect_kv("order")));
    model.alpha_ = std::stod(expect_kv("alpha"));
    model.total_tokens_ = std::stoull(expect_kv("total_tokens"));
    std::size_t vocab = std::stoull(expect_kv("vocab"));
    if (model.order_ < 1) throw LoadError("order must be >= 1");
    if (model.alpha_ < 0) throw LoadError("alpha must be >= 0");

    model.id_to_token_.reserve(vocab);
    for (std::size_t i = 0; i < vocab; ++i) {
      next_line(line);
      if (line.empty()) throw LoadError("empty vocab entry");
      model.token_to_id_.emplace(line, static_cast<TokenId>(i + 1));
      model.id_to_token_.push_back(std::move(line));
    }

    model.tables_.assign(model.order_, Table{});
    std::size_t histories = std::stoull(expect_kv("histories"));
    for (std::size_t h = 0; h < histories; ++h) {
      next_line(line);
      std::istringstream hs(line);
      std::string tag;
      std::size_t len = 0, nsucc = 0;
      hs >> tag >> len;
      if (tag != "h" || !hs) throw LoadError("bad history line: " + line);
      if (len >= model.order_) throw LoadError("history longer than order");
      std::vector<TokenId> ids(len);
      for (auto& id : ids) {
        std::uint64_t v;
        if (!(hs >> v) || v > vocab) throw LoadError("bad history id in: " + line);
        id = static_cast<TokenId>(v);
      }
      if (!(hs >> nsucc)) throw LoadError("bad history line: " + line);

      Successors succ;
      for (std::size_t s = 0; s < nsucc; ++s) {
        next_line(line);
        std::istringstream ss(line);
        std::uint64_t id, count;
        if (!(ss >> id >> count) || id == 0 || id > vocab || count == 0)
          throw LoadError("bad successor line: " + line);
        succ.counts.emplace(static_cast<TokenId>(id), count);
        succ.total += count;
      }
      model.tables_[len].emplace(pack(ids), std::move(succ));
    }
    next_line(line);
    if (line != "end") throw LoadError("missing end marker");
  } catch (const LoadError&) {
    throw;
  } catch (const std::exception& e) {
    throw LoadError(std::string("malformed model file: ") + e.what());
  }
  return model;
}

NGramTrainer::NGramTrainer(unsigned order, double alpha) {
  if (order < 1) throw ConfigError("n-gram order must be >= 1");
  if (alpha < 0.0) throw ConfigError("alpha must be >= 0");
  model_.order_ = order;
  model_.alpha_ = alpha;
  model_.tables_.assign(order, NGramModel::Table{});
}

void NGramTrainer::add(const std::vector<std::string>& tokens) {
  if (finished_) throw Error("NGramTrainer: add() after finish()");
  if (tokens.empty()) return;

  using TokenId = NGramModel::TokenId;
  const unsigned order = model_.order_;
  const std::size_t hlen = order - 1;

  std::vector<TokenId> padded(hlen + tokens.size(), NGramModel::kStartId);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto [it, inserted] = model_.token_to_id_.try_emplace(
        tokens[i], static_cast<TokenId>(model_.id_to_token_.size() + 1));
    if (inserted) model_.id_to_token_.push_back(tokens[i]);
    padded[hlen + i] = it->second;
  }

  // Every k-gram, k = 1..order, ending at each real token position.
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::size_t j = hlen + i;  // position in the padded run
    for (unsigned k = 1; k <= order; ++k) {
      std::span<const TokenId> history(padded.data() + j - (k - 1), k - 1);
      auto& succ = model_.tables_[k - 1][NGramModel::pack(history)];
      ++succ.total;
      ++succ.counts[padded[j]];
    }
  }
  model_.total_tokens_ += tokens.size();
}

NGramModel NGramTrainer::finish() {
  if (finished_) throw Error("NGramTrainer: finish() called twice");
  finished_ = true;
  return std::move(model_);
}

NGramModel train_ngram(const std::vector<TokenSequence>& records,
                       unsigned order, double alpha) {
  NGramTrainer trainer(order, alpha);
  for (const auto& rec : records) trainer.add(rec);
  return trainer.finish();
}

double char_entropy(std::string_view bytes) {
  if (bytes.empty()) throw InvalidInputError("char_entropy: empty span");
  std::array<std::uint64_t, 256> counts{};
  for (unsigned char c : bytes) ++counts[c];
  const double n = static_cast<double>(bytes.size());
  double h = 0.0;
  for (std::uint64_t c : counts) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

}  // namespace logent
