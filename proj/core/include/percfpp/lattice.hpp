#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace percfpp {

// Vertex of the square lattice Z^2. The origin sits at the center (0.5, 0.5)
// of the unit cell [0, 1]^2.
using LatticeVertex = std::pair<int, int>;

// Closed self-avoiding vertex sequence (first vertex not repeated at the end),
// in canonical form: the lexicographically smallest sequence over all
// rotations and both traversal directions.
using Circuit = std::vector<LatticeVertex>;

Circuit canonical_circuit(const Circuit& cycle);

// True iff (0.5, 0.5) lies strictly inside the circuit by the even-odd rule.
bool surrounds_origin(const Circuit& cycle);

// All distinct circuits of the given length surrounding the origin cell.
// Odd lengths yield an empty set. Length must be in [0, 16].
std::set<Circuit> surrounding_circuits(int length);

struct CircuitCount {
  int m = 0;  // half-length
  std::uint64_t count = 0;
  double bound = 0.0;

  double ratio() const noexcept { return bound > 0.0 ? static_cast<double>(count) / bound : 0.0; }
};

// (4/27)(m - 1) 3^(2m)
double circuit_bound(int m);

inline constexpr int kMinCircuitHalfLength = 2;
inline constexpr int kMaxCircuitHalfLength = 8;

// Exact count of circuits of length 2m surrounding the origin, 2 <= m <= 8.
CircuitCount enumerate_surrounding_circuits(int m);

// Image of a circuit under one of the 8 symmetries of the origin cell
// (index 0..7), returned in canonical form.
Circuit transform_circuit(const Circuit& cycle, int symmetry);

}  // namespace percfpp
