#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "../support/oracles.hpp"
#include "percfpp/errors.hpp"
#include "percfpp/geo_graph.hpp"
#include "percfpp/rng.hpp"

using namespace percfpp;

namespace {
PointCloud cloud_of(std::vector<Point> pts, Region r = Region::square(10)) {
  return PointCloud(std::move(pts), r, 1.0, 0);
}
}  // namespace

TEST(BuildGraph, SingleLinkBelowRadius) {
  const auto g = build_graph(cloud_of({{1, 1}, {1.9, 1}}), 1.0);
  ASSERT_EQ(g.link_count(), 1u);
  EXPECT_NEAR(g.link(0).length, 0.9, 1e-12);
}

TEST(BuildGraph, BoundaryIsInclusive) {
  const auto g = build_graph(cloud_of({{2, 2}, {3, 2}}), 1.0);
  ASSERT_EQ(g.link_count(), 1u);
  EXPECT_EQ(g.link(0).length, 1.0);
}

TEST(BuildGraph, RejectsNonPositiveRadius) {
  EXPECT_THROW(build_graph(cloud_of({}), 0.0), InvalidInput);
  EXPECT_THROW(build_graph(cloud_of({}), -1.0), InvalidInput);
}

TEST(BuildGraph, MatchesAllPairsOracle) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    // Expected sizes 300 to 1800 nodes.
    const double side = 25.0;
    const auto cloud = sample_poisson(Region::square(side), 300.0 * (seed + 1) / (side * side), seed);
    ASSERT_LE(cloud.size(), 2000u);
    const auto g = build_graph(cloud, 1.0);
    EXPECT_EQ(oracle::link_set(g), oracle::all_pairs_links(cloud.points(), 1.0)) << "seed " << seed;
  }
}

TEST(BuildGraph, LengthsAndAdjacencyAreConsistent) {
  const auto g = build_graph(sample_poisson(Region::square(20), 2.0, 4), 1.0);
  std::vector<int> seen(g.link_count(), 0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (LinkId k : g.incident(v)) {
      const Link& l = g.link(k);
      EXPECT_TRUE(l.a == v || l.b == v);
      ++seen[k];
    }
  }
  for (LinkId k = 0; k < g.link_count(); ++k) {
    const Link& l = g.link(k);
    EXPECT_LT(l.a, l.b);
    EXPECT_EQ(seen[k], 2);
    EXPECT_NEAR(l.length, distance(g.position(l.a), g.position(l.b)), 1e-15);
    EXPECT_LE(l.length, 1.0);
  }
}

// (density lambda, radius r) rescaled by 1/r equals (density lambda r^2, radius 1).
TEST(BuildGraph, ScalingProperty) {
  const double r = 1.7;
  const auto cloud = sample_poisson(Region::square(30), 0.8, 12);
  const auto g = build_graph(cloud, r);
  std::vector<Point> scaled;
  for (const auto& p : cloud.points()) scaled.push_back({p.x / r, p.y / r});
  const auto h = build_graph(PointCloud(scaled, Region::square(30 / r), 0.8 * r * r, 12), 1.0);
  EXPECT_EQ(oracle::link_set(g), oracle::link_set(h));
}

TEST(DegreeStats, EmptyAndSingle) {
  const auto empty = node_degree_stats(build_graph(cloud_of({}), 1.0));
  EXPECT_EQ(empty.mean_degree, 0.0);
  EXPECT_TRUE(empty.histogram.empty());
  const auto single = node_degree_stats(build_graph(cloud_of({{5, 5}}), 1.0));
  EXPECT_EQ(single.mean_degree, 0.0);
  EXPECT_EQ(single.histogram.at(0), 1u);
}

// Interior mean degree approaches lambda * pi * r^2.
TEST(DegreeStats, InteriorMeanDegreeMatchesIntensity) {
  const auto g = build_graph(sample_poisson(Region::square(100), 1.75, 21), 1.0);
  const auto stats = node_degree_stats(g, 1.0);
  EXPECT_NEAR(stats.mean_degree, 1.75 * std::numbers::pi, 0.02 * 1.75 * std::numbers::pi);
  std::size_t total = 0;
  for (const auto& [deg, count] : stats.histogram) total += count;
  EXPECT_EQ(total, stats.nodes_counted);
}

TEST(GraphExport, WritesNodeAndLinkCsv) {
  const auto dir = std::filesystem::temp_directory_path() / "percfpp_graph_export";
  std::filesystem::create_directories(dir);
  const auto g = build_graph(cloud_of({{1, 1}, {1.5, 1}, {5, 5}}), 1.0);
  write_graph_csv(g, dir / "nodes.csv", dir / "links.csv");
  std::ifstream nodes(dir / "nodes.csv"), links(dir / "links.csv");
  std::string line;
  std::getline(nodes, line);
  EXPECT_EQ(line, "id,x,y");
  int n = 0;
  while (std::getline(nodes, line)) ++n;
  EXPECT_EQ(n, 3);
  std::getline(links, line);
  EXPECT_EQ(line, "id,node_i,node_j,length");
  std::getline(links, line);
  EXPECT_EQ(line, "0,0,1,0.5");
}
