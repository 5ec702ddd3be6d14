#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "percfpp/geo_graph.hpp"
#include "percfpp/link_mask.hpp"
#include "percfpp/stats.hpp"
#include "percfpp/thinning.hpp"

namespace percfpp {

// Disjoint-set forest with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
  }

  std::uint32_t find(std::uint32_t x) noexcept {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns the surviving root.
  std::uint32_t unite(std::uint32_t a, std::uint32_t b) noexcept {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return a;
  }

  std::size_t size_of(std::uint32_t x) noexcept { return size_[find(x)]; }
  std::size_t element_count() const noexcept { return parent_.size(); }

  // Appends a new singleton and returns its id.
  std::uint32_t add() {
    const auto id = static_cast<std::uint32_t>(parent_.size());
    parent_.push_back(id);
    size_.push_back(1);
    return id;
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::size_t> size_;
};

using ComponentId = std::uint32_t;

// Component ids are dense, numbered in order of each component's smallest node.
struct ComponentLabeling {
  std::vector<ComponentId> labels;
  std::vector<std::size_t> component_sizes;
  ComponentId largest_id = 0;

  std::size_t component_count() const noexcept { return component_sizes.size(); }
  std::size_t largest_size() const noexcept {
    return component_sizes.empty() ? 0 : component_sizes[largest_id];
  }
  double largest_fraction() const noexcept {
    return labels.empty() ? 0.0
                          : static_cast<double>(largest_size()) / static_cast<double>(labels.size());
  }
  bool connected(NodeId a, NodeId b) const noexcept { return labels[a] == labels[b]; }
  std::vector<NodeId> members(ComponentId id) const;
};

ComponentLabeling label_components(const GeoGraph& graph);
// Only links active in `mask` join components; mask.size() must equal the link count.
ComponentLabeling label_components(const GeoGraph& graph, const LinkMask& mask);

struct ComponentExtent {
  double value = 0.0;
  bool exact = true;  // false: bounding-box diagonal upper bound
};

inline constexpr std::size_t kExactExtentLimit = 2000;

// Max pairwise distance within a component; exact up to kExactExtentLimit nodes.
ComponentExtent component_extent(const ComponentLabeling& labeling, const GeoGraph& graph,
                                 ComponentId id);

enum class CrossingDirection { left_right, top_bottom };

struct CrossingSpec {
  Region rect;
  CrossingDirection direction = CrossingDirection::left_right;
};

// True iff some connected node sequence contained in spec.rect, using only
// active links, starts strictly within distance 1 of the entry side and ends
// strictly within distance 1 of the exit side (0 < x(v1) - x1 < 1 and
// 0 < x2 - x(vm) < 1 for left-right).
bool crossing_exists(const GeoGraph& graph, const LinkMask& mask, const CrossingSpec& spec);
bool crossing_exists(const GeoGraph& graph, const CrossingSpec& spec);

enum class RectangleEvent {
  good,  // [0, 1.5d] x [0, 0.5d] crossed left to right
  open,  // good, and both end squares of side d/2 crossed top to bottom
};

// Monte Carlo probability of a good/open rectangle of scale d under density
// and link retention probability. Replicate r uses stream (seed, r).
Estimate estimate_crossing_prob(double density, const LinkProbability& prob, double d,
                                RectangleEvent event, std::size_t replicates, std::uint64_t seed,
                                unsigned threads = 1);

}  // namespace percfpp
