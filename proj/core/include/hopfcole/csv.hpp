#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace hopfcole {

/// Numeric field rendering shared by every output table: shortest
/// round-trippable decimal via %.17g, so reruns are byte-stable.
std::string format_double(double v);

/// Minimal CSV writer with deterministic formatting.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  ~CsvWriter();

  CsvWriter& field(double v);
  CsvWriter& field(int64_t v);
  CsvWriter& field(int v) { return field(static_cast<int64_t>(v)); }
  CsvWriter& field(uint64_t v);
  CsvWriter& field(const std::string& v);
  void end_row();

 private:
  void sep();
  std::ofstream out_;
  bool row_open_ = false;
  std::filesystem::path path_;
};

/// Reads a single numeric column (by header name) from a small CSV file.
std::vector<double> read_csv_column(const std::filesystem::path& path,
                                    const std::string& column);

}  // namespace hopfcole
