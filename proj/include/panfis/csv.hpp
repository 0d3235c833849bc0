#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace panfis {

/// Minimal CSV table: a header row plus string cells. Parse errors carry the
/// 1-based line number.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<int> line_numbers;  // source line of each row

  int column(const std::string& name) const;           // -1 when absent
  int require_column(const std::string& name) const;   // throws when absent
  double number(std::size_t row, int col) const;       // throws naming the line
};

CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(const std::string& text, const std::string& origin = "<csv>");

/// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double value);

}  // namespace panfis
