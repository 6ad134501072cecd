#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace aoimdp {

// Stable textual formatting for CSV cells; %.12g keeps outputs diffable
// and re-run identical.
inline std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header)
      : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open for writing: " + path);
    columns_ = header.size();
    write_cells(header);
  }

  void row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_)
      throw std::logic_error("csv row width mismatch");
    write_cells(cells);
  }

 private:
  void write_cells(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  std::ofstream out_;
  std::size_t columns_ = 0;
};

}  // namespace aoimdp
