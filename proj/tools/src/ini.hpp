#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace bidomain::tools {

// Minimal INI reader: [section] headers, key = value lines, '#' or ';'
// comments. Parsing never throws; syntax problems are appended to issues so
// a config file can be diagnosed in one pass.
class Ini {
 public:
  static Ini parse_file(const std::string& path, std::vector<std::string>& issues);

  // Returns the raw value and marks the entry as consumed; unconsumed entries
  // are reported after the schema walk so typos surface as errors.
  std::optional<std::string> take(const std::string& section, const std::string& key) const;

  bool has_section(const std::string& section) const;
  std::vector<std::string> unconsumed() const;

 private:
  std::map<std::string, std::map<std::string, std::string>> values_;
  std::vector<std::pair<std::string, std::string>> order_;
  mutable std::set<std::pair<std::string, std::string>> consumed_;
};

std::string trim(const std::string& s);

}  // namespace bidomain::tools
