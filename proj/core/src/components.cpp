#include "percfpp/components.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "percfpp/errors.hpp"
#include "percfpp/parallel.hpp"
#include "percfpp/rng.hpp"

namespace percfpp {

std::vector<NodeId> ComponentLabeling::members(ComponentId id) const {
  std::vector<NodeId> out;
  for (NodeId n = 0; n < labels.size(); ++n) {
    if (labels[n] == id) out.push_back(n);
  }
  return out;
}

namespace {

ComponentLabeling finalize(UnionFind& uf) {
  ComponentLabeling result;
  const std::size_t n = uf.element_count();
  result.labels.resize(n);
  constexpr auto kUnset = std::numeric_limits<ComponentId>::max();
  std::vector<ComponentId> root_label(n, kUnset);
  for (NodeId v = 0; v < n; ++v) {
    const auto root = uf.find(v);
    if (root_label[root] == kUnset) {
      root_label[root] = static_cast<ComponentId>(result.component_sizes.size());
      result.component_sizes.push_back(0);
    }
    result.labels[v] = root_label[root];
    ++result.component_sizes[root_label[root]];
  }
  if (!result.component_sizes.empty()) {
    result.largest_id = static_cast<ComponentId>(
        std::max_element(result.component_sizes.begin(), result.component_sizes.end()) -
        result.component_sizes.begin());
  }
  return result;
}

}  // namespace

ComponentLabeling label_components(const GeoGraph& graph) {
  UnionFind uf(graph.node_count());
  for (const Link& l : graph.links()) uf.unite(l.a, l.b);
  return finalize(uf);
}

ComponentLabeling label_components(const GeoGraph& graph, const LinkMask& mask) {
  if (mask.size() != graph.link_count()) {
    throw InvalidInput("link mask length " + std::to_string(mask.size()) +
                       " does not match link count " + std::to_string(graph.link_count()));
  }
  UnionFind uf(graph.node_count());
  for (LinkId k = 0; k < graph.link_count(); ++k) {
    if (mask.active(k)) uf.unite(graph.link(k).a, graph.link(k).b);
  }
  return finalize(uf);
}

ComponentExtent component_extent(const ComponentLabeling& labeling, const GeoGraph& graph,
                                 ComponentId id) {
  if (id >= labeling.component_count()) {
    throw InvalidInput("unknown component id " + std::to_string(id));
  }
  const auto nodes = labeling.members(id);
  if (nodes.size() <= kExactExtentLimit) {
    double best = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (std::size_t j = i + 1; j < nodes.size(); ++j) {
        best = std::max(best, distance(graph.position(nodes[i]), graph.position(nodes[j])));
      }
    }
    return {best, true};
  }
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
  double x1 = -x0, y1 = -x0;
  for (NodeId n : nodes) {
    const Point p = graph.position(n);
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  return {std::hypot(x1 - x0, y1 - y0), false};
}

namespace {

bool crossing_impl(const GeoGraph& graph, const LinkMask* mask, const CrossingSpec& spec) {
  const Region& rect = spec.rect;
  if (!graph.cloud().region().contains(rect)) {
    throw InvalidInput("crossing rectangle must lie inside the graph region");
  }
  const bool lr = spec.direction == CrossingDirection::left_right;
  const double lo = lr ? rect.x_min() : rect.y_max();
  const double hi = lr ? rect.x_max() : rect.y_min();
  // Coordinate along the crossing direction, measured from the entry side.
  auto depth_from_entry = [&](Point p) { return lr ? p.x - lo : lo - p.y; };
  auto depth_from_exit = [&](Point p) { return lr ? hi - p.x : p.y - hi; };

  const std::size_t n = graph.node_count();
  UnionFind uf(n);
  for (LinkId k = 0; k < graph.link_count(); ++k) {
    if (mask && !mask->active(k)) continue;
    const Link& l = graph.link(k);
    if (rect.contains(graph.position(l.a)) && rect.contains(graph.position(l.b))) {
      uf.unite(l.a, l.b);
    }
  }
  // Bit 1: component touches the entry margin, bit 2: the exit margin.
  std::vector<std::uint8_t> flags(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    const Point p = graph.position(v);
    if (!rect.contains(p)) continue;
    std::uint8_t f = 0;
    const double de = depth_from_entry(p);
    const double dx = depth_from_exit(p);
    if (de > 0.0 && de < 1.0) f |= 1;
    if (dx > 0.0 && dx < 1.0) f |= 2;
    if (f == 0) continue;
    auto& root_flags = flags[uf.find(v)];
    root_flags |= f;
    if (root_flags == 3) return true;
  }
  return false;
}

}  // namespace

bool crossing_exists(const GeoGraph& graph, const LinkMask& mask, const CrossingSpec& spec) {
  if (mask.size() != graph.link_count()) throw InvalidInput("link mask length mismatch");
  return crossing_impl(graph, &mask, spec);
}

bool crossing_exists(const GeoGraph& graph, const CrossingSpec& spec) {
  return crossing_impl(graph, nullptr, spec);
}

Estimate estimate_crossing_prob(double density, const LinkProbability& prob, double d,
                                RectangleEvent event, std::size_t replicates, std::uint64_t seed,
                                unsigned threads) {
  if (replicates < 1) throw InvalidInput("replicates must be >= 1");
  if (!(d > 0.0)) throw InvalidInput("rectangle scale d must be positive");
  const Region rect(0.0, 0.0, 1.5 * d, 0.5 * d);
  const Region left(0.0, 0.0, 0.5 * d, 0.5 * d);
  const Region right(d, 0.0, 1.5 * d, 0.5 * d);
  std::vector<std::uint8_t> hit(replicates, 0);
  parallel_for(replicates, resolve_threads(threads), [&](std::size_t r) {
    const std::uint64_t rs = stream_seed(seed, r);
    GeoGraph graph = build_graph(sample_poisson(rect, density, rs), 1.0);
    const LinkMask mask = thin_links(graph, prob, mix64(rs));
    bool ok = crossing_exists(graph, mask, {rect, CrossingDirection::left_right});
    if (ok && event == RectangleEvent::open) {
      ok = crossing_exists(graph, mask, {left, CrossingDirection::top_bottom}) &&
           crossing_exists(graph, mask, {right, CrossingDirection::top_bottom});
    }
    hit[r] = ok ? 1 : 0;
  });
  std::size_t hits = 0;
  for (auto h : hit) hits += h;
  return proportion(hits, replicates);
}

}  // namespace percfpp
