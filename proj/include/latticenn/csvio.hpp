#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace latticenn {

struct IOError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All command output files start with this provenance comment line.
std::string provenance_header(std::uint64_t config_hash, std::uint64_t seed,
                              const std::string& command);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Number formatting used by the command-line front end: 6 significant digits
// by default, 17 when full precision is requested.
std::string format_double(double v, bool full_precision);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 when absent
};

// Parses a CSV file; '#'-prefixed lines before the header are skipped.
CsvTable read_csv(const std::string& path);

}  // namespace latticenn
