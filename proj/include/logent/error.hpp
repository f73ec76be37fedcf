// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace logent {

// Base type for everything this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad configuration (mask rules, split plans, model parameters).
// Raised when the configuration is loaded, never mid-pipeline.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Invalid data handed to an operation (empty span, length mismatch).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// A malformed input line; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Pure-MLE scoring hit an n-gram never seen in training. Carries the
// token position within the scored sequence; the window index is attached
// by timeline scoring when known.
class UnseenEventError : public Error {
 public:
  UnseenEventError(const std::string& what, std::size_t position)
      : Error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

  static constexpr std::size_t kNoWindow = static_cast<std::size_t>(-1);
  std::size_t window() const noexcept { return window_; }
  void set_window(std::size_t w) noexcept { window_ = w; }

 private:
  std::size_t position_;
  std::size_t window_ = kNoWindow;
};

// Model deserialization failure (bad version, truncation, corruption).
class LoadError : public Error {
 public:
  using Error::Error;
};

// Scenario specification failure; carries the offending field name.
class SpecError : public Error {
 public:
  SpecError(const std::string& field, const std::string& what)
      : Error("field '" + field + "': " + what), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace logent
