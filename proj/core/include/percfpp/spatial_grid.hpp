#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "percfpp/geometry.hpp"

namespace percfpp {

// Uniform bucket grid over a region with square cells of a given side.
// Supports incremental insertion; callers visit the 3x3 block around a point.
class SpatialGrid {
 public:
  SpatialGrid(const Region& region, double cell_side)
      : region_(region),
        cell_(cell_side),
        nx_(std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(region.width() / cell_side)))),
        ny_(std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(region.height() / cell_side)))),
        cells_(static_cast<std::size_t>(nx_ * ny_)) {}

  void insert(std::uint32_t id, Point p) { cells_[cell_index(cell_x(p), cell_y(p))].push_back(id); }

  // Calls fn(id) for every stored id in the 3x3 block of cells around p.
  template <typename Fn>
  void for_each_near(Point p, Fn&& fn) const {
    const std::int64_t cx = cell_x(p);
    const std::int64_t cy = cell_y(p);
    for (std::int64_t gx = std::max<std::int64_t>(0, cx - 1); gx <= std::min(nx_ - 1, cx + 1); ++gx) {
      for (std::int64_t gy = std::max<std::int64_t>(0, cy - 1); gy <= std::min(ny_ - 1, cy + 1); ++gy) {
        for (std::uint32_t id : cells_[cell_index(gx, gy)]) fn(id);
      }
    }
  }

 private:
  std::int64_t cell_x(Point p) const noexcept {
    const auto c = static_cast<std::int64_t>(std::floor((p.x - region_.x_min()) / cell_));
    return std::clamp<std::int64_t>(c, 0, nx_ - 1);
  }
  std::int64_t cell_y(Point p) const noexcept {
    const auto c = static_cast<std::int64_t>(std::floor((p.y - region_.y_min()) / cell_));
    return std::clamp<std::int64_t>(c, 0, ny_ - 1);
  }
  std::size_t cell_index(std::int64_t gx, std::int64_t gy) const noexcept {
    return static_cast<std::size_t>(gy * nx_ + gx);
  }

  Region region_;
  double cell_;
  std::int64_t nx_;
  std::int64_t ny_;
  std::vector<std::vector<std::uint32_t>> cells_;
};

}  // namespace percfpp
