#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace brw::csv {

// Numeric formatting fixed at %.12g so output bytes are platform-stable.
std::string format_number(double v);

// Minimal row-oriented writer: UTF-8, LF line endings.
class Writer {
 public:
  explicit Writer(const std::filesystem::path& path);

  void header(const std::vector<std::string>& names);
  Writer& field(const std::string& s);
  Writer& field(double v);
  Writer& field(std::int64_t v);
  Writer& field(int v) { return field(static_cast<std::int64_t>(v)); }
  void end_row();

 private:
  std::ofstream out_;
  bool row_open_ = false;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 if absent
  double number(std::size_t row, int col) const;
};

Table read(const std::filesystem::path& path);

}  // namespace brw::csv
