// SPDX-License-Identifier: MIT
// Minimal key=value file reader ('#' comments, blank lines ignored). The
// same files feed the command-line tool through CLI11's config support and
// the acceptance runner through this reader.
#pragma once

#include <map>
#include <string>

namespace gdg {

class Config {
 public:
  static Config load(const std::string& path);

  bool has(const std::string& key) const { return kv_.find(key) != kv_.end(); }
  double get(const std::string& key, double fallback) const;
  int get(const std::string& key, int fallback) const;
  std::string get(const std::string& key, const std::string& fallback) const;

 private:
  std::map<std::string, std::string> kv_;
};

} // namespace gdg
