// Copyright 2026 The darkcat Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "darkcat/types.hpp"

namespace darkcat::cli {

/// Bad or unknown configuration entry. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Typed view of one JSON object that remembers which keys were read, so
/// leftovers can be rejected.
class ConfigReader {
 public:
  ConfigReader(const nlohmann::json& obj, std::string path);

  bool has(const std::string& key) const { return obj_.contains(key); }
  double number(const std::string& key);
  double number(const std::string& key, double fallback);
  int integer(const std::string& key, int fallback);
  bool boolean(const std::string& key, bool fallback);
  std::string choice(const std::string& key, const std::vector<std::string>& allowed, const std::string& fallback);
  /// A string or a non-empty list of strings, each from `allowed`.
  std::vector<std::string> choices(const std::string& key, const std::vector<std::string>& allowed,
                                   const std::vector<std::string>& fallback);
  /// A scalar or a non-empty list of numbers.
  std::vector<double> numbers(const std::string& key);
  std::vector<double> numbers(const std::string& key, std::vector<double> fallback);
  std::vector<int> integers(const std::string& key, std::vector<int> fallback);
  /// Spins given as numbers (1, 1.5, ...).
  std::vector<HalfInt> spins(const std::string& key);
  ConfigReader object(const std::string& key);
  std::vector<ConfigReader> objects(const std::string& key);
  /// Throws ConfigError naming every key that was never read.
  void finish() const;

 private:
  const nlohmann::json& at(const std::string& key);
  [[noreturn]] void fail(const std::string& key, const std::string& msg) const;

  nlohmann::json obj_;
  std::string path_;
  std::set<std::string> used_;
};

nlohmann::json load_config(const std::string& file);

}  // namespace darkcat::cli
