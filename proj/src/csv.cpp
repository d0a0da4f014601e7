#include "sfdd/csv.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace sfdd {

std::string fmt_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void CsvTable::add_comment(const std::string& line) { comments_.push_back(line); }

void CsvTable::set_header(std::vector<std::string> names) { header_ = std::move(names); }

void CsvTable::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != header_.size())
    throw std::invalid_argument("CsvTable: row width does not match header");
  rows_.push_back(cells);
}

void CsvTable::add_row_values(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(fmt_g9(v));
  add_row(cells);
}

void CsvTable::write(std::ostream& os) const {
  for (const auto& c : comments_) os << "# " << c << "\n";
  for (size_t i = 0; i < header_.size(); ++i)
    os << header_[i] << (i + 1 < header_.size() ? "," : "");
  os << "\n";
  for (const auto& row : rows_) {
    for (size_t i = 0; i < row.size(); ++i) os << row[i] << (i + 1 < row.size() ? "," : "");
    os << "\n";
  }
}

std::string CsvTable::to_string() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

}  // namespace sfdd
