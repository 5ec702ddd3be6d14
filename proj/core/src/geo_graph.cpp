#include "percfpp/geo_graph.hpp"

#include <algorithm>
#include <fstream>

#include "percfpp/csv.hpp"
#include "percfpp/errors.hpp"
#include "percfpp/spatial_grid.hpp"

namespace percfpp {

GeoGraph::GeoGraph(PointCloud cloud, double radius, std::vector<Link> links)
    : cloud_(std::move(cloud)), radius_(radius), links_(std::move(links)) {
  const std::size_t n = cloud_.size();
  offsets_.assign(n + 1, 0);
  for (const Link& l : links_) {
    ++offsets_[l.a + 1];
    ++offsets_[l.b + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  incident_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (LinkId k = 0; k < links_.size(); ++k) {
    incident_[fill[links_[k].a]++] = k;
    incident_[fill[links_[k].b]++] = k;
  }
}

GeoGraph build_graph(PointCloud cloud, double radius) {
  if (!(radius > 0.0)) throw InvalidInput("radius must be positive");
  const auto& pts = cloud.points();
  SpatialGrid grid(cloud.region(), radius);
  for (NodeId i = 0; i < pts.size(); ++i) grid.insert(i, pts[i]);

  std::vector<Link> links;
  for (NodeId i = 0; i < pts.size(); ++i) {
    grid.for_each_near(pts[i], [&](std::uint32_t j) {
      if (j <= i) return;
      const double d = distance(pts[i], pts[j]);
      if (d <= radius) links.push_back({i, j, d});
    });
  }
  std::sort(links.begin(), links.end(),
            [](const Link& l, const Link& r) { return l.a != r.a ? l.a < r.a : l.b < r.b; });
  return GeoGraph(std::move(cloud), radius, std::move(links));
}

namespace {

DegreeStats degree_stats_filtered(const GeoGraph& graph, double strip) {
  DegreeStats stats;
  const Region& region = graph.cloud().region();
  std::size_t total = 0;
  for (NodeId n = 0; n < graph.node_count(); ++n) {
    const Point p = graph.position(n);
    if (strip > 0.0 && (p.x - region.x_min() < strip || region.x_max() - p.x < strip ||
                        p.y - region.y_min() < strip || region.y_max() - p.y < strip)) {
      continue;
    }
    ++stats.histogram[graph.degree(n)];
    total += graph.degree(n);
    ++stats.nodes_counted;
  }
  if (stats.nodes_counted > 0) {
    stats.mean_degree = static_cast<double>(total) / static_cast<double>(stats.nodes_counted);
  }
  return stats;
}

}  // namespace

DegreeStats node_degree_stats(const GeoGraph& graph) { return degree_stats_filtered(graph, 0.0); }

DegreeStats node_degree_stats(const GeoGraph& graph, double boundary_strip) {
  if (boundary_strip < 0.0) throw InvalidInput("boundary strip must be non-negative");
  return degree_stats_filtered(graph, boundary_strip);
}

void write_graph_csv(const GeoGraph& graph, const std::filesystem::path& nodes_file,
                     const std::filesystem::path& links_file) {
  CsvWriter nodes(nodes_file, {"id", "x", "y"});
  for (NodeId n = 0; n < graph.node_count(); ++n) {
    const Point p = graph.position(n);
    nodes.row(n, p.x, p.y);
  }
  CsvWriter links(links_file, {"id", "node_i", "node_j", "length"});
  for (LinkId k = 0; k < graph.link_count(); ++k) {
    const Link& l = graph.link(k);
    links.row(k, l.a, l.b, l.length);
  }
}

}  // namespace percfpp
