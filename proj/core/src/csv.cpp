#include "percfpp/csv.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace percfpp {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

void CsvWriter::open(const std::filesystem::path& path) {
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     std::initializer_list<std::string_view> header) {
  open(path);
  bool first = true;
  for (auto h : header) write_field(h, first);
  out_ << '\n';
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string> comments,
                     std::initializer_list<std::string_view> header) {
  open(path);
  for (const auto& c : comments) out_ << "# " << c << '\n';
  bool first = true;
  for (auto h : header) write_field(h, first);
  out_ << '\n';
}

}  // namespace percfpp
