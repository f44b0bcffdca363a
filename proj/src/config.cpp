#include "stratlab/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stratlab {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
  throw std::runtime_error("config " + origin + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(origin, lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) fail(origin, lineno, "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(origin, lineno, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(origin, lineno, "empty key");
    const std::string full = section.empty() ? key : section + "." + key;
    if (cfg.entries_.count(full)) fail(origin, lineno, "duplicate key " + full);
    cfg.entries_[full] = value;
    cfg.consumed_[full] = false;
  }
  return cfg;
}

std::optional<std::string> Config::take(const std::string& key) {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  consumed_[key] = true;
  return it->second;
}

std::string Config::require(const std::string& key) {
  auto v = take(key);
  if (!v) throw std::runtime_error("config " + origin_ + ": missing required key " + key);
  return *v;
}

std::optional<double> Config::take_double(const std::string& key) {
  auto v = take(key);
  if (!v) return std::nullopt;
  try {
    std::size_t pos = 0;
    const double d = std::stod(*v, &pos);
    if (pos != v->size()) throw std::invalid_argument("");
    return d;
  } catch (...) {
    throw std::runtime_error("config " + origin_ + ": key " + key + " is not a number: " + *v);
  }
}

double Config::require_double(const std::string& key) {
  auto v = take_double(key);
  if (!v) throw std::runtime_error("config " + origin_ + ": missing required key " + key);
  return *v;
}

double Config::take_double_or(const std::string& key, double fallback) {
  auto v = take_double(key);
  return v ? *v : fallback;
}

std::optional<std::int64_t> Config::take_int(const std::string& key) {
  auto v = take(key);
  if (!v) return std::nullopt;
  try {
    std::size_t pos = 0;
    const std::int64_t n = std::stoll(*v, &pos);
    if (pos != v->size()) throw std::invalid_argument("");
    return n;
  } catch (...) {
    throw std::runtime_error("config " + origin_ + ": key " + key + " is not an integer: " + *v);
  }
}

std::int64_t Config::take_int_or(const std::string& key, std::int64_t fallback) {
  auto v = take_int(key);
  return v ? *v : fallback;
}

bool Config::take_bool_or(const std::string& key, bool fallback) {
  auto v = take(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw std::runtime_error("config " + origin_ + ": key " + key + " is not a boolean: " + *v);
}

std::vector<std::string> Config::take_strings(const std::string& key) {
  auto v = take(key);
  std::vector<std::string> out;
  if (!v) return out;
  std::istringstream in(*v);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> Config::take_doubles(const std::string& key) {
  auto items = take_strings(key);
  std::vector<double> out;
  out.reserve(items.size());
  for (const auto& s : items) {
    try {
      out.push_back(std::stod(s));
    } catch (...) {
      throw std::runtime_error("config " + origin_ + ": key " + key + " has non-numeric entry " + s);
    }
  }
  return out;
}

void Config::finish() const {
  std::string unknown;
  for (const auto& [key, used] : consumed_) {
    if (!used) unknown += (unknown.empty() ? "" : ", ") + key;
  }
  if (!unknown.empty())
    throw std::runtime_error("config " + origin_ + ": unknown keys: " + unknown);
}

}  // namespace stratlab
