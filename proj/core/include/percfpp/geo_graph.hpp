#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <vector>

#include "percfpp/geometry.hpp"

namespace percfpp {

using NodeId = std::uint32_t;
using LinkId = std::uint32_t;

struct Link {
  NodeId a;  // a < b
  NodeId b;
  double length;

  NodeId other(NodeId n) const noexcept { return n == a ? b : a; }
  friend bool operator==(const Link&, const Link&) = default;
};

// Random geometric graph: nodes of a point cloud, one link for every pair at
// Euclidean distance <= radius. Links are sorted by (a, b) and addressed by
// index; per-link state (masks, delays) lives in vectors parallel to links().
class GeoGraph {
 public:
  const PointCloud& cloud() const noexcept { return cloud_; }
  double radius() const noexcept { return radius_; }
  std::size_t node_count() const noexcept { return cloud_.size(); }
  std::size_t link_count() const noexcept { return links_.size(); }
  Point position(NodeId n) const noexcept { return cloud_[n]; }
  const std::vector<Link>& links() const noexcept { return links_; }
  const Link& link(LinkId k) const noexcept { return links_[k]; }

  // Indices of links incident to `n`.
  std::span<const LinkId> incident(NodeId n) const noexcept {
    return {incident_.data() + offsets_[n], incident_.data() + offsets_[n + 1]};
  }
  std::size_t degree(NodeId n) const noexcept { return offsets_[n + 1] - offsets_[n]; }

 private:
  friend GeoGraph build_graph(PointCloud cloud, double radius);
  GeoGraph(PointCloud cloud, double radius, std::vector<Link> links);

  PointCloud cloud_;
  double radius_;
  std::vector<Link> links_;
  std::vector<std::size_t> offsets_;
  std::vector<LinkId> incident_;
};

// Grid binning with cell side = radius, 3x3 block neighbor search.
GeoGraph build_graph(PointCloud cloud, double radius);

struct DegreeStats {
  double mean_degree = 0.0;
  std::size_t nodes_counted = 0;
  std::map<std::size_t, std::size_t> histogram;
};

DegreeStats node_degree_stats(const GeoGraph& graph);
// Only nodes at least `boundary_strip` away from every side of the region.
DegreeStats node_degree_stats(const GeoGraph& graph, double boundary_strip);

// nodes.csv: id,x,y   links.csv: id,node_i,node_j,length
void write_graph_csv(const GeoGraph& graph, const std::filesystem::path& nodes_file,
                     const std::filesystem::path& links_file);

}  // namespace percfpp
