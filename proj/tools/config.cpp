// Copyright 2026 The darkcat Authors
// SPDX-License-Identifier: Apache-2.0
#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace darkcat::cli {

ConfigReader::ConfigReader(const nlohmann::json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
  if (!obj_.is_object()) throw ConfigError(path_ + ": expected an object");
}

void ConfigReader::fail(const std::string& key, const std::string& msg) const {
  throw ConfigError(path_ + "." + key + ": " + msg);
}

const nlohmann::json& ConfigReader::at(const std::string& key) {
  if (!obj_.contains(key)) fail(key, "missing");
  used_.insert(key);
  return obj_.at(key);
}

double ConfigReader::number(const std::string& key) {
  const auto& v = at(key);
  if (!v.is_number()) fail(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(key, "not finite");
  return x;
}

double ConfigReader::number(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

int ConfigReader::integer(const std::string& key, int fallback) {
  if (!has(key)) return fallback;
  const auto& v = at(key);
  if (!v.is_number_integer()) fail(key, "expected an integer");
  return v.get<int>();
}

bool ConfigReader::boolean(const std::string& key, bool fallback) {
  if (!has(key)) return fallback;
  const auto& v = at(key);
  if (!v.is_boolean()) fail(key, "expected true or false");
  return v.get<bool>();
}

std::string ConfigReader::choice(const std::string& key, const std::vector<std::string>& allowed,
                                 const std::string& fallback) {
  if (!has(key)) return fallback;
  const auto& v = at(key);
  if (v.is_string()) {
    for (const std::string& a : allowed) {
      if (v.get<std::string>() == a) return a;
    }
  }
  std::string msg = "expected one of";
  for (const std::string& a : allowed) msg += " \"" + a + "\"";
  fail(key, msg);
}

std::vector<double> ConfigReader::numbers(const std::string& key) {
  const auto& v = at(key);
  std::vector<double> out;
  if (v.is_number()) {
    out.push_back(v.get<double>());
  } else if (v.is_array() && !v.empty()) {
    for (const auto& e : v) {
      if (!e.is_number()) fail(key, "expected numbers");
      out.push_back(e.get<double>());
    }
  } else {
    fail(key, "expected a number or a non-empty list of numbers");
  }
  for (double x : out) {
    if (!std::isfinite(x)) fail(key, "not finite");
  }
  return out;
}

std::vector<double> ConfigReader::numbers(const std::string& key, std::vector<double> fallback) {
  return has(key) ? numbers(key) : fallback;
}

std::vector<int> ConfigReader::integers(const std::string& key, std::vector<int> fallback) {
  if (!has(key)) return fallback;
  std::vector<int> out;
  for (double x : numbers(key)) {
    if (x != std::round(x)) fail(key, "expected integers");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

std::vector<HalfInt> ConfigReader::spins(const std::string& key) {
  std::vector<HalfInt> out;
  for (double x : numbers(key)) {
    try {
      out.push_back(HalfInt::from_double(x));
    } catch (const Error& e) {
      fail(key, e.what());
    }
    if (out.back().twice() <= 0) fail(key, "spins must be positive");
  }
  return out;
}

std::vector<std::string> ConfigReader::choices(const std::string& key, const std::vector<std::string>& allowed,
                                               const std::vector<std::string>& fallback) {
  if (!has(key)) return fallback;
  const auto& v = at(key);
  if (v.is_string()) return {choice(key, allowed, "")};
  if (!v.is_array() || v.empty()) fail(key, "expected a string or a non-empty list of strings");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string() || std::find(allowed.begin(), allowed.end(), e.get<std::string>()) == allowed.end()) {
      std::string msg = "entries must be one of";
      for (const std::string& a : allowed) msg += " \"" + a + "\"";
      fail(key, msg);
    }
    out.push_back(e.get<std::string>());
  }
  return out;
}

ConfigReader ConfigReader::object(const std::string& key) { return ConfigReader(at(key), path_ + "." + key); }

std::vector<ConfigReader> ConfigReader::objects(const std::string& key) {
  const auto& v = at(key);
  if (!v.is_array() || v.empty()) fail(key, "expected a non-empty list of objects");
  std::vector<ConfigReader> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.emplace_back(v[i], path_ + "." + key + "[" + std::to_string(i) + "]");
  return out;
}

void ConfigReader::finish() const {
  std::string unknown;
  for (const auto& [k, v] : obj_.items()) {
    if (!used_.count(k)) unknown += (unknown.empty() ? "" : ", ") + k;
  }
  if (!unknown.empty()) throw ConfigError(path_ + ": unknown key(s): " + unknown);
}

nlohmann::json load_config(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file " + file);
  try {
    return nlohmann::json::parse(in, nullptr, true, true);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(file + ": " + e.what());
  }
}

}  // namespace darkcat::cli
