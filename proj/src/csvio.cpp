#include "latticenn/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace latticenn {

std::string provenance_header(std::uint64_t config_hash, std::uint64_t seed,
                              const std::string& command) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "# config_hash=%016llx seed=%llu command=",
                static_cast<unsigned long long>(config_hash),
                static_cast<unsigned long long>(seed));
  return std::string(buf) + command + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IOError("write failed for '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IOError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string format_double(double v, bool full_precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), full_precision ? "%.17g" : "%.6g", v);
  return buf;
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOError("cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!have_header && line.front() == '#') continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.push_back("");
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
    } else {
      table.rows.push_back(std::move(fields));
    }
  }
  if (!have_header) throw IOError("'" + path + "' has no header row");
  return table;
}

}  // namespace latticenn
