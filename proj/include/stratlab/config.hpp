#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stratlab {

/// Plain-text key/value scenario format: `[section]` / `[section.sub]`
/// headers, `key = value` lines, `#` comments. Keys are addressed as
/// "section.key". Every key must be consumed; finish() rejects leftovers
/// so typos never pass silently.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  std::optional<std::string> take(const std::string& key);
  std::string require(const std::string& key);

  std::optional<double> take_double(const std::string& key);
  double require_double(const std::string& key);
  double take_double_or(const std::string& key, double fallback);

  std::optional<std::int64_t> take_int(const std::string& key);
  std::int64_t take_int_or(const std::string& key, std::int64_t fallback);

  bool take_bool_or(const std::string& key, bool fallback);

  /// Comma-separated lists.
  std::vector<std::string> take_strings(const std::string& key);
  std::vector<double> take_doubles(const std::string& key);

  /// Throws if any key was never consumed (unknown keys are errors).
  void finish() const;

  const std::string& origin() const { return origin_; }

 private:
  std::string origin_;
  std::map<std::string, std::string> entries_;
  std::map<std::string, bool> consumed_;
};

}  // namespace stratlab
