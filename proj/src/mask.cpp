// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#include "logent/mask.hpp"

#include <array>
#include <fstream>

#include <json.hpp>

#include "logent/error.hpp"

namespace logent {

namespace {

constexpr std::array<std::string_view, 7> kPlaceholders = {
    "<TS>", "<IP>", "<HEX>", "<NUM>", "<PATH>", "<UUID>", "<ID>"};

}  // namespace

bool is_known_placeholder(std::string_view placeholder) {
  for (auto p : kPlaceholders)
    if (p == placeholder) return true;
  return false;
}

Masker::Masker(std::vector<MaskRule> rules) : rules_(std::move(rules)) {
  compiled_.reserve(rules_.size());
  for (const auto& rule : rules_) {
    if (!is_known_placeholder(rule.placeholder))
      throw ConfigError("mask placeholder '" + rule.placeholder +
                        "' is not in the placeholder alphabet");
    try {
      compiled_.emplace_back(rule.pattern,
                             std::regex::ECMAScript | std::regex::optimize);
    } catch (const std::regex_error& e) {
      throw ConfigError("bad mask pattern '" + rule.pattern + "': " + e.what());
    }
  }
}

const std::vector<MaskRule>& Masker::standard_rules() {
  static const std::vector<MaskRule> rules = {
      {R"(\b\d{4}-\d{2}-\d{2}[T ]\d{2}:\d{2}:\d{2}(?:[.,]\d{1,9})?(?:Z|[+-]\d{2}:?\d{2})?)",
       "<TS>"},
      {R"(\b(?:\d{1,3}\.){3}\d{1,3}\b)", "<IP>"},
      // Requires a digit and a hex letter; otherwise plain integers and
      // ordinary words like "added" would mask as hex.
      {R"(\b(?=[0-9a-fA-F]*\d)(?=[0-9a-fA-F]*[a-fA-F])[0-9a-fA-F]{4,}\b)",
       "<HEX>"},
      {R"(\b\d+\b)", "<NUM>"},
      // Runs after the numeric rules, so segments may already contain
      // placeholders.
      {R"((?:/[A-Za-z0-9._<>+=-]+){2,}/?)", "<PATH>"},
      {R"(\b[0-9a-fA-F]{8}-[0-9a-fA-F]{4}-[0-9a-fA-F]{4}-[0-9a-fA-F]{4}-[0-9a-fA-F]{12}\b)",
       "<UUID>"},
  };
  return rules;
}

Masker Masker::standard() { return Masker(standard_rules()); }

std::string Masker::apply(std::string_view text) const {
  std::string cur(text);
  std::string next;
  for (const auto& re : compiled_) {
    auto begin = std::cregex_iterator(cur.data(), cur.data() + cur.size(), re);
    auto end = std::cregex_iterator();
    if (begin == end) continue;

    const std::string& placeholder =
        rules_[static_cast<std::size_t>(&re - compiled_.data())].placeholder;
    next.clear();
    next.reserve(cur.size());
    std::size_t last = 0;
    for (auto it = begin; it != end; ++it) {
      auto pos = static_cast<std::size_t>(it->position());
      next.append(cur, last, pos - last);
      next.append(placeholder);
      last = pos + static_cast<std::size_t>(it->length());
    }
    next.append(cur, last, cur.size() - last);
    cur.swap(next);
  }
  return cur;
}

std::vector<MaskRule> load_mask_rules(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open mask rules file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw ConfigError("bad mask rules file " + path + ": " + e.what());
  }
  if (!doc.is_array())
    throw ConfigError("mask rules file must be a JSON array: " + path);

  std::vector<MaskRule> rules;
  for (const auto& entry : doc) {
    if (!entry.is_object() || !entry.contains("pattern") ||
        !entry.contains("placeholder"))
      throw ConfigError("each mask rule needs 'pattern' and 'placeholder'");
    rules.push_back({entry["pattern"].get<std::string>(),
                     entry["placeholder"].get<std::string>()});
  }
  return rules;
}

}  // namespace logent
