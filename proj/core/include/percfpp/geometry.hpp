#pragma once

#include <cstdint>
#include <vector>

namespace percfpp {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b) noexcept;

// Axis-aligned rectangle [x_min, x_max] x [y_min, y_max]. Lengths are in
// units of the link radius.
class Region {
 public:
  Region(double x_min, double y_min, double x_max, double y_max);

  static Region square(double side) { return Region(0.0, 0.0, side, side); }
  // [-half, half]^2
  static Region centered_square(double half) { return Region(-half, -half, half, half); }

  double x_min() const noexcept { return x_min_; }
  double y_min() const noexcept { return y_min_; }
  double x_max() const noexcept { return x_max_; }
  double y_max() const noexcept { return y_max_; }
  double width() const noexcept { return x_max_ - x_min_; }
  double height() const noexcept { return y_max_ - y_min_; }
  double area() const noexcept { return width() * height(); }

  // Closed-set membership.
  bool contains(Point p) const noexcept {
    return p.x >= x_min_ && p.x <= x_max_ && p.y >= y_min_ && p.y <= y_max_;
  }
  bool contains(const Region& other) const noexcept {
    return other.x_min_ >= x_min_ && other.x_max_ <= x_max_ && other.y_min_ >= y_min_ &&
           other.y_max_ <= y_max_;
  }

  friend bool operator==(const Region&, const Region&) = default;

 private:
  double x_min_;
  double y_min_;
  double x_max_;
  double y_max_;
};

// A realization of a homogeneous Poisson point process restricted to a
// region. Immutable once constructed.
class PointCloud {
 public:
  PointCloud(std::vector<Point> points, Region region, double density, std::uint64_t seed);

  const std::vector<Point>& points() const noexcept { return points_; }
  const Region& region() const noexcept { return region_; }
  double density() const noexcept { return density_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  Point operator[](std::size_t i) const noexcept { return points_[i]; }

 private:
  std::vector<Point> points_;
  Region region_;
  double density_;
  std::uint64_t seed_;
};

// Poisson(density * area) points, each uniform in the region. Deterministic
// per (region, density, seed).
PointCloud sample_poisson(const Region& region, double density, std::uint64_t seed);

// Copy of `cloud` with `position` inserted at index 0.
PointCloud add_origin_node(const PointCloud& cloud, Point position);

}  // namespace percfpp
