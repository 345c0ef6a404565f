#pragma once

#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace rlab {

// Shortest round-trip decimal form; identical output for identical doubles.
std::string format_double(double v);

std::string csv_quote(const std::string& field);

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::span<const std::string> header);
  void row(std::span<const std::string> fields);
  void row(std::initializer_list<std::string> fields);

 private:
  std::ofstream out_;
};

}  // namespace rlab
