#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qoc/bloch.hpp"

namespace qoc::cli {

/// Writes rows of 17-significant-digit values under a header line. The file
/// is staged with a `.partial` suffix and renamed once fully written, so an
/// interrupted run never leaves an unlabeled partial file behind.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& header);
  ~CsvWriter();

  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(const std::vector<double>& values);
  void raw_row(const std::string& line);
  void finish();  ///< flush and rename away from .partial

 private:
  std::filesystem::path final_path_;
  std::filesystem::path partial_path_;
  std::string buffer_;
  bool finished_ = false;
};

std::string format_value(double v);  ///< %.17g

/// Column-major numeric table read back from a CSV with one header line.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> data;  ///< data[col][row]

  int column(const std::string& name) const;  ///< -1 when absent
};

CsvTable read_csv(const std::filesystem::path& path);

/// Rebuilds a control field from a `t,ux,uy` CSV; the time column must be
/// uniform.
ControlField read_control(const std::filesystem::path& path);

}  // namespace qoc::cli
