#include "csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qoc/errors.hpp"

namespace qoc::cli {

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::string& header)
    : final_path_(path), partial_path_(path.string() + ".partial") {
  std::filesystem::create_directories(path.parent_path());
  buffer_ = header + "\n";
}

CsvWriter::~CsvWriter() {
  if (!finished_) {
    // Leave the evidence of the interrupted run, clearly labeled.
    std::ofstream out(partial_path_, std::ios::binary);
    out << buffer_;
  }
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += format_value(values[i]);
  }
  buffer_ += '\n';
}

void CsvWriter::raw_row(const std::string& line) {
  buffer_ += line;
  buffer_ += '\n';
}

void CsvWriter::finish() {
  {
    std::ofstream out(partial_path_, std::ios::binary);
    if (!out) throw EvaluationError("cannot write " + partial_path_.string());
    out << buffer_;
  }
  std::filesystem::rename(partial_path_, final_path_);
  finished_ = true;
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  return -1;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open CSV file '" + path.string() + "'");
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty CSV file '" + path.string() + "'");
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) table.columns.push_back(cell);
  table.data.resize(table.columns.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream rs(line);
    std::size_t col = 0;
    while (std::getline(rs, cell, ',')) {
      if (col >= table.columns.size())
        throw ConfigError("row with too many fields in '" + path.string() + "'");
      table.data[col].push_back(std::stod(cell));
      ++col;
    }
    if (col != table.columns.size())
      throw ConfigError("row with too few fields in '" + path.string() + "'");
  }
  return table;
}

ControlField read_control(const std::filesystem::path& path) {
  const CsvTable table = read_csv(path);
  const int t_col = table.column("t");
  const int ux_col = table.column("ux");
  const int uy_col = table.column("uy");
  if (t_col < 0 || ux_col < 0 || uy_col < 0)
    throw ConfigError("control CSV '" + path.string() + "' needs columns t, ux, uy");
  const auto& t = table.data[static_cast<std::size_t>(t_col)];
  if (t.size() < 2) throw ConfigError("control CSV '" + path.string() + "' needs >= 2 rows");

  ControlField field;
  field.grid.t0 = t.front();
  field.grid.tf = t.back();
  field.grid.n_steps = static_cast<int>(t.size()) - 1;
  const double h = field.grid.h();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (std::abs(t[i] - (field.grid.t0 + h * static_cast<double>(i))) > 1e-9 * std::max(1.0, std::abs(t[i])))
      throw ConfigError("control CSV '" + path.string() + "' has a non-uniform time column");
  }
  field.ux = table.data[static_cast<std::size_t>(ux_col)];
  field.uy = table.data[static_cast<std::size_t>(uy_col)];
  return field;
}

}  // namespace qoc::cli
