#pragma once

#include <filesystem>
#include <span>
#include <string>

namespace percfpp {

struct ScatterPoint {
  double x;
  double y;
};

// Self-contained SVG: scatter of points plus a horizontal reference line at
// y = reference (skipped if NaN).
void write_scatter_svg(const std::filesystem::path& path, std::span<const ScatterPoint> points,
                       double reference, const std::string& title, const std::string& x_label,
                       const std::string& y_label);

}  // namespace percfpp
