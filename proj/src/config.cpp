// SPDX-License-Identifier: MIT
#include "gdg/config.hpp"

#include <fstream>
#include <stdexcept>

#include "gdg/check.hpp"

namespace gdg {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

} // namespace

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  GDG_REQUIRE(in.good(), "config: cannot open " << path);
  Config cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    GDG_REQUIRE(eq != std::string::npos, "config: " << path << ":" << lineno << ": expected key=value");
    const std::string key = trim(t.substr(0, eq));
    GDG_REQUIRE(!key.empty(), "config: " << path << ":" << lineno << ": empty key");
    cfg.kv_[key] = trim(t.substr(eq + 1));
  }
  return cfg;
}

double Config::get(const std::string& key, double fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : std::stod(it->second);
}

int Config::get(const std::string& key, int fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : std::stoi(it->second);
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

} // namespace gdg
