// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <regex>
#include <string>
#include <string_view>
#include <vector>

namespace logent {

// A single masking rule: an ECMAScript regular expression and the
// placeholder that replaces every maximal match.
struct MaskRule {
  std::string pattern;
  std::string placeholder;
};

bool is_known_placeholder(std::string_view placeholder);

// Compiles a rule list once; applies the rules in list order, replacing
// every match with the rule's placeholder. Bad patterns or placeholders
// outside the closed alphabet raise ConfigError at construction.
class Masker {
 public:
  explicit Masker(std::vector<MaskRule> rules);

  // Default rule set: ISO timestamps, IPv4 addresses, hex strings of four
  // or more chars (at least one digit and one letter), decimal integers,
  // multi-segment file paths, UUIDs — in that order.
  static const std::vector<MaskRule>& standard_rules();
  static Masker standard();

  std::string apply(std::string_view text) const;

  const std::vector<MaskRule>& rules() const { return rules_; }

 private:
  std::vector<MaskRule> rules_;
  std::vector<std::regex> compiled_;
};

// Loads rules from a JSON file: [{"pattern": ..., "placeholder": ...}, ...].
std::vector<MaskRule> load_mask_rules(const std::string& path);

}  // namespace logent
