#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace latticenn {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// INI-style configuration: [section] headers, key = value lines, '#'
// comments. Every key must be known to the active command; unknown keys are
// rejected with their line number. All values are kept as strings and parsed
// on access so the effective dump reproduces exactly what will be used.
class RunConfig {
 public:
  static RunConfig parse_file(const std::string& path);
  static RunConfig parse_text(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& section, const std::string& key) const;

  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  std::int64_t get_int(const std::string& section, const std::string& key,
                       std::int64_t fallback) const;
  bool get_bool(const std::string& section, const std::string& key,
                bool fallback) const;
  std::vector<double> get_double_list(const std::string& section, const std::string& key,
                                      const std::vector<double>& fallback) const;
  std::vector<std::string> get_string_list(const std::string& section,
                                           const std::string& key,
                                           const std::vector<std::string>& fallback) const;

  void set(const std::string& section, const std::string& key, const std::string& value);

  // Rejects any present key not in the allow list ("section.key" entries).
  void require_known_keys(const std::vector<std::string>& allowed) const;

  // Sorted "key = value" dump; reparses to an identical config.
  std::string dump() const;

  // FNV-1a hash of the effective dump, for output-file provenance headers.
  std::uint64_t hash() const;

 private:
  // key: "section.key" -> (value, source line)
  std::map<std::string, std::pair<std::string, int>> values_;
};

}  // namespace latticenn
