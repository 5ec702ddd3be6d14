#include "percfpp/geometry.hpp"

#include <cmath>
#include <random>
#include <string>

#include "percfpp/errors.hpp"
#include "percfpp/rng.hpp"

namespace percfpp {

double distance(Point a, Point b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

Region::Region(double x_min, double y_min, double x_max, double y_max)
    : x_min_(x_min), y_min_(y_min), x_max_(x_max), y_max_(y_max) {
  if (!(x_max > x_min) || !(y_max > y_min)) {
    throw InvalidInput("region must have x_max > x_min and y_max > y_min");
  }
}

PointCloud::PointCloud(std::vector<Point> points, Region region, double density,
                       std::uint64_t seed)
    : points_(std::move(points)), region_(region), density_(density), seed_(seed) {
  if (!(density >= 0.0)) throw InvalidInput("density must be non-negative");
  for (const Point& p : points_) {
    if (!region_.contains(p)) throw InvalidInput("point lies outside the cloud region");
  }
}

PointCloud sample_poisson(const Region& region, double density, std::uint64_t seed) {
  if (!(density >= 0.0) || !std::isfinite(density)) {
    throw InvalidInput("density must be finite and non-negative, got " + std::to_string(density));
  }
  Rng rng(seed);
  std::vector<Point> points;
  const double mean = density * region.area();
  if (mean > 0.0) {
    std::poisson_distribution<std::uint64_t> count_dist(mean);
    const std::uint64_t n = count_dist(rng);
    points.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      const double x = rng.uniform(region.x_min(), region.x_max());
      const double y = rng.uniform(region.y_min(), region.y_max());
      points.push_back({x, y});
    }
  }
  return PointCloud(std::move(points), region, density, seed);
}

PointCloud add_origin_node(const PointCloud& cloud, Point position) {
  if (!cloud.region().contains(position)) {
    throw InvalidInput("origin node position lies outside the cloud region");
  }
  std::vector<Point> points;
  points.reserve(cloud.size() + 1);
  points.push_back(position);
  points.insert(points.end(), cloud.points().begin(), cloud.points().end());
  return PointCloud(std::move(points), cloud.region(), cloud.density(), cloud.seed());
}

}  // namespace percfpp
