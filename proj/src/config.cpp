#include "latticenn/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace latticenn {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

RunConfig RunConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str(), path);
}

RunConfig RunConfig::parse_text(const std::string& text, const std::string& origin) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(origin + ":" + std::to_string(lineno) +
                          ": malformed section header '" + line + "'");
      section = lower(trim(line.substr(1, line.size() - 2)));
      if (section.empty())
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": expected 'key = value', got '" + line + "'");
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    if (section.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": key '" + key + "' outside of any [section]");
    const std::string full = section + "." + key;
    if (cfg.values_.count(full))
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": duplicate key '" + full + "'");
    cfg.values_[full] = {value, lineno};
  }
  return cfg;
}

bool RunConfig::has(const std::string& section, const std::string& key) const {
  return values_.count(section + "." + key) > 0;
}

std::string RunConfig::get_string(const std::string& section, const std::string& key,
                                  const std::string& fallback) const {
  const auto it = values_.find(section + "." + key);
  return it == values_.end() ? fallback : it->second.first;
}

double RunConfig::get_double(const std::string& section, const std::string& key,
                             double fallback) const {
  const auto it = values_.find(section + "." + key);
  if (it == values_.end()) return fallback;
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second.first, &used);
    if (used != it->second.first.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(it->second.second) + ": '" +
                      section + "." + key + "' is not a number: '" +
                      it->second.first + "'");
  }
}

std::int64_t RunConfig::get_int(const std::string& section, const std::string& key,
                                std::int64_t fallback) const {
  const auto it = values_.find(section + "." + key);
  if (it == values_.end()) return fallback;
  try {
    std::size_t used = 0;
    const std::int64_t v = std::stoll(it->second.first, &used);
    if (used != it->second.first.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(it->second.second) + ": '" +
                      section + "." + key + "' is not an integer: '" +
                      it->second.first + "'");
  }
}

bool RunConfig::get_bool(const std::string& section, const std::string& key,
                         bool fallback) const {
  const auto it = values_.find(section + "." + key);
  if (it == values_.end()) return fallback;
  const std::string v = lower(it->second.first);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("line " + std::to_string(it->second.second) + ": '" + section +
                    "." + key + "' is not a boolean: '" + it->second.first + "'");
}

std::vector<double> RunConfig::get_double_list(const std::string& section,
                                               const std::string& key,
                                               const std::vector<double>& fallback) const {
  const auto it = values_.find(section + "." + key);
  if (it == values_.end()) return fallback;
  std::vector<double> out;
  std::istringstream ss(it->second.first);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("line " + std::to_string(it->second.second) + ": '" +
                        section + "." + key + "' has a non-numeric entry '" + item + "'");
    }
  }
  if (out.empty())
    throw ConfigError("line " + std::to_string(it->second.second) + ": '" + section +
                      "." + key + "' is an empty list");
  return out;
}

std::vector<std::string> RunConfig::get_string_list(
    const std::string& section, const std::string& key,
    const std::vector<std::string>& fallback) const {
  const auto it = values_.find(section + "." + key);
  if (it == values_.end()) return fallback;
  std::vector<std::string> out;
  std::istringstream ss(it->second.first);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void RunConfig::set(const std::string& section, const std::string& key,
                    const std::string& value) {
  values_[lower(section) + "." + lower(key)] = {value, 0};
}

void RunConfig::require_known_keys(const std::vector<std::string>& allowed) const {
  for (const auto& [full, entry] : values_) {
    if (std::find(allowed.begin(), allowed.end(), full) == allowed.end())
      throw ConfigError("line " + std::to_string(entry.second) +
                        ": unknown config key '" + full + "'");
  }
}

std::string RunConfig::dump() const {
  std::ostringstream os;
  std::string section;
  for (const auto& [full, entry] : values_) {
    const auto dot = full.find('.');
    const std::string sec = full.substr(0, dot);
    if (sec != section) {
      if (!section.empty()) os << "\n";
      os << "[" << sec << "]\n";
      section = sec;
    }
    os << full.substr(dot + 1) << " = " << entry.first << "\n";
  }
  return os.str();
}

std::uint64_t RunConfig::hash() const {
  const std::string text = dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace latticenn
