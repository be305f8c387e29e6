#include "hopfcole/csv.hpp"

#include <cinttypes>
#include <cstdio>
#include <sstream>

#include "hopfcole/common.hpp"

namespace hopfcole {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     const std::vector<std::string>& header)
    : path_(path) {
  std::error_code ec;
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path(), ec);
  out_.open(path);
  if (!out_) throw IoError("cannot open for writing: " + path.string());
  for (size_t i = 0; i < header.size(); ++i)
    out_ << (i ? "," : "") << header[i];
  out_ << "\n";
}

CsvWriter::~CsvWriter() {
  if (out_.is_open()) out_.flush();
}

void CsvWriter::sep() {
  if (row_open_) out_ << ",";
  row_open_ = true;
}

CsvWriter& CsvWriter::field(double v) {
  sep();
  out_ << format_double(v);
  return *this;
}

CsvWriter& CsvWriter::field(int64_t v) {
  sep();
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%" PRId64, v);
  out_ << buf;
  return *this;
}

CsvWriter& CsvWriter::field(uint64_t v) {
  sep();
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%" PRIu64, v);
  out_ << buf;
  return *this;
}

CsvWriter& CsvWriter::field(const std::string& v) {
  sep();
  out_ << v;
  return *this;
}

void CsvWriter::end_row() {
  out_ << "\n";
  row_open_ = false;
  if (!out_) throw IoError("write failed: " + path_.string());
}

std::vector<double> read_csv_column(const std::filesystem::path& path,
                                    const std::string& column) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty csv: " + path.string());
  std::vector<std::string> names;
  {
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) names.push_back(cell);
  }
  int col = -1;
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == column) col = static_cast<int>(i);
  if (col < 0) throw IoError("column '" + column + "' not found in " + path.string());
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    for (int i = 0; std::getline(ls, cell, ','); ++i)
      if (i == col) values.push_back(std::stod(cell));
  }
  return values;
}

}  // namespace hopfcole
