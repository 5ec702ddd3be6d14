#pragma once

#include <concepts>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <type_traits>

namespace percfpp {

// Shortest round-trippable-enough text for a double ("%.12g"); inf/nan as
// "inf"/"nan".
std::string format_number(double value);

// Comma-separated file with a header row and LF line endings.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header);

  // Optional '# ' comment lines must precede the header; use this overload.
  CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string> comments,
            std::initializer_list<std::string_view> header);

  template <typename... Fields>
  void row(const Fields&... fields) {
    bool first = true;
    ((write_field(fields, first)), ...);
    out_ << '\n';
  }

 private:
  template <typename T>
  void write_field(const T& value, bool& first) {
    if (!first) out_ << ',';
    first = false;
    if constexpr (std::is_same_v<T, bool>) {
      out_ << (value ? 1 : 0);
    } else if constexpr (std::is_floating_point_v<T>) {
      out_ << format_number(static_cast<double>(value));
    } else if constexpr (std::is_integral_v<T>) {
      out_ << value;
    } else {
      out_ << std::string_view(value);
    }
  }

  void open(const std::filesystem::path& path);

  std::ofstream out_;
};

}  // namespace percfpp
