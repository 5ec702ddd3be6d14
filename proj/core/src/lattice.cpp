#include "percfpp/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "percfpp/errors.hpp"

namespace percfpp {

Circuit canonical_circuit(const Circuit& cycle) {
  const std::size_t n = cycle.size();
  Circuit best;
  Circuit candidate(n);
  for (int dir = 0; dir < 2; ++dir) {
    for (std::size_t start = 0; start < n; ++start) {
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t idx = dir == 0 ? (start + i) % n : (start + n - i) % n;
        candidate[i] = cycle[idx];
      }
      if (best.empty() || candidate < best) best = candidate;
    }
  }
  return best;
}

bool surrounds_origin(const Circuit& cycle) {
  // Ray from (0.5, 0.5) towards +x crosses vertical edges x = i >= 1 spanning y in [0, 1].
  int crossings = 0;
  const std::size_t n = cycle.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto [x0, y0] = cycle[i];
    const auto [x1, y1] = cycle[(i + 1) % n];
    if (x0 == x1 && x0 >= 1 && std::min(y0, y1) == 0 && std::max(y0, y1) == 1) ++crossings;
  }
  return crossings % 2 == 1;
}

namespace {

constexpr int kDx[4] = {1, 0, -1, 0};
constexpr int kDy[4] = {0, 1, 0, -1};

class CircuitSearch {
 public:
  CircuitSearch(int length, std::set<Circuit>& out) : length_(length), out_(out) {}

  // Walks starting with the vertical edge (i, 0) -> (i, 1), which every
  // surrounding circuit crossing x = i must contain.
  void from_edge(int i) {
    start_ = {i, 0};
    path_ = {start_, {i, 1}};
    extend();
  }

 private:
  bool on_path(LatticeVertex v) const {
    return std::find(path_.begin(), path_.end(), v) != path_.end();
  }

  void extend() {
    const auto steps = static_cast<int>(path_.size()) - 1;
    const LatticeVertex cur = path_.back();
    const int remaining = length_ - steps;
    const int gap = std::abs(cur.first - start_.first) + std::abs(cur.second - start_.second);
    if (gap > remaining) return;
    for (int dir = 0; dir < 4; ++dir) {
      const LatticeVertex next{cur.first + kDx[dir], cur.second + kDy[dir]};
      if (remaining == 1) {
        if (next == start_) {
          const Circuit cycle(path_.begin(), path_.end());
          if (surrounds_origin(cycle)) out_.insert(canonical_circuit(cycle));
        }
        continue;
      }
      if (next == start_ || on_path(next)) continue;
      path_.push_back(next);
      extend();
      path_.pop_back();
    }
  }

  int length_;
  std::set<Circuit>& out_;
  LatticeVertex start_{};
  std::vector<LatticeVertex> path_;
};

}  // namespace

std::set<Circuit> surrounding_circuits(int length) {
  if (length < 0 || length > 2 * kMaxCircuitHalfLength) {
    throw InvalidInput("circuit length must lie in [0, " +
                       std::to_string(2 * kMaxCircuitHalfLength) + "]");
  }
  std::set<Circuit> out;
  if (length < 4) return out;
  CircuitSearch search(length, out);
  // A circuit of length L surrounding the cell has width < L / 2, so any edge
  // it has on the ray satisfies 1 <= i <= L / 2 - 1.
  for (int i = 1; i <= length / 2; ++i) search.from_edge(i);
  return out;
}

double circuit_bound(int m) {
  return (4.0 / 27.0) * static_cast<double>(m - 1) * std::pow(3.0, 2.0 * m);
}

CircuitCount enumerate_surrounding_circuits(int m) {
  if (m < kMinCircuitHalfLength || m > kMaxCircuitHalfLength) {
    throw InvalidInput("half-length m must lie in [" + std::to_string(kMinCircuitHalfLength) +
                       ", " + std::to_string(kMaxCircuitHalfLength) + "], got " +
                       std::to_string(m));
  }
  return {m, surrounding_circuits(2 * m).size(), circuit_bound(m)};
}

Circuit transform_circuit(const Circuit& cycle, int symmetry) {
  // Work in doubled coordinates centered on the origin cell: u = 2x - 1.
  Circuit out;
  out.reserve(cycle.size());
  for (auto [x, y] : cycle) {
    int u = 2 * x - 1;
    int v = 2 * y - 1;
    if (symmetry & 1) u = -u;
    if (symmetry & 2) v = -v;
    if (symmetry & 4) std::swap(u, v);
    out.push_back({(u + 1) / 2, (v + 1) / 2});
  }
  return canonical_circuit(out);
}

}  // namespace percfpp
