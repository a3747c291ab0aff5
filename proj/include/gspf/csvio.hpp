#pragma once

#include <string>
#include <vector>

namespace gspf {

// Shortest decimal form that survives a strtod round trip for IEEE doubles.
std::string fmt17(double x);

struct CsvTable {
  std::vector<std::string> comments;  // '#'-prefixed header lines, prefix stripped
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

}  // namespace gspf
