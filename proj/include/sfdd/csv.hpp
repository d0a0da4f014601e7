#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sfdd {

/** Formats a double with 9 significant digits ("%.9g"), the fixed CSV
 * serialization used everywhere so that re-runs are byte-identical. */
std::string fmt_g9(double v);

/** A CSV table with '#'-prefixed provenance comments (config echo, tool
 * version, experiment id). Cell values are pre-formatted strings; all rows
 * carry the same column count. */
class CsvTable {
 public:
  void add_comment(const std::string& line);
  void set_header(std::vector<std::string> names);
  void add_row(const std::vector<std::string>& cells);
  void add_row_values(const std::vector<double>& values);

  size_t rows() const { return rows_.size(); }
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::string>& row(size_t i) const { return rows_[i]; }

  void write(std::ostream& os) const;
  std::string to_string() const;

 private:
  std::vector<std::string> comments_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace sfdd
