#include "brw/csv.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace brw::csv {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Writer::Writer(const std::filesystem::path& path) : out_(path, std::ios::binary) {
  if (!out_) throw std::runtime_error("cannot open " + path.string());
}

void Writer::header(const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out_ << ',';
    out_ << names[i];
  }
  out_ << '\n';
}

Writer& Writer::field(const std::string& s) {
  if (row_open_) out_ << ',';
  out_ << s;
  row_open_ = true;
  return *this;
}

Writer& Writer::field(double v) { return field(format_number(v)); }

Writer& Writer::field(std::int64_t v) { return field(std::to_string(v)); }

void Writer::end_row() {
  out_ << '\n';
  row_open_ = false;
}

int Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  return -1;
}

double Table::number(std::size_t row, int col) const {
  if (col < 0 || row >= rows.size())
    throw std::out_of_range("csv cell out of range");
  return std::stod(rows[row][static_cast<std::size_t>(col)]);
}

Table read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  Table table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (first) {
      table.columns = std::move(cells);
      first = false;
    } else {
      table.rows.push_back(std::move(cells));
    }
  }
  return table;
}

}  // namespace brw::csv
