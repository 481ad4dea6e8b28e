#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace campaign {

/// Comma-separated numeric table with a header row. Values are printed
/// with 17 significant digits so that a round trip through text is exact.
class CsvTable {
public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<double> values);
  void add_row(std::initializer_list<double> values) { add_row(std::vector<double>(values)); }

  std::size_t rows() const { return rows_.size(); }
  std::size_t columns() const { return header_.size(); }
  std::string str() const;

private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

std::string format_double(double value);

/// Writes to a sibling temporary file and renames it over `path`, so a
/// reader never observes a truncated file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

} // namespace campaign
