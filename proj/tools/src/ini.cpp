#include "ini.hpp"

#include <fstream>

namespace bidomain::tools {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Ini Ini::parse_file(const std::string& path, std::vector<std::string>& issues) {
  Ini ini;
  std::ifstream in(path);
  if (!in) {
    issues.push_back("cannot open config file '" + path + "'");
    return ini;
  }
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        issues.push_back(where + ": malformed section header '" + line + "'");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      issues.push_back(where + ": expected 'key = value', got '" + line + "'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) {
      issues.push_back(where + ": entry '" + key + "' appears before any [section]");
      continue;
    }
    if (key.empty()) {
      issues.push_back(where + ": empty key");
      continue;
    }
    auto& sec = ini.values_[section];
    if (!sec.emplace(key, value).second) {
      issues.push_back(where + ": duplicate entry " + section + "." + key);
      continue;
    }
    ini.order_.emplace_back(section, key);
  }
  return ini;
}

std::optional<std::string> Ini::take(const std::string& section, const std::string& key) const {
  consumed_.insert({section, key});
  const auto sec = values_.find(section);
  if (sec == values_.end()) return std::nullopt;
  const auto it = sec->second.find(key);
  if (it == sec->second.end()) return std::nullopt;
  return it->second;
}

bool Ini::has_section(const std::string& section) const {
  return values_.find(section) != values_.end();
}

std::vector<std::string> Ini::unconsumed() const {
  std::vector<std::string> out;
  for (const auto& [section, key] : order_) {
    if (consumed_.find({section, key}) == consumed_.end()) {
      out.push_back("unrecognized entry " + section + "." + key);
    }
  }
  return out;
}

}  // namespace bidomain::tools
