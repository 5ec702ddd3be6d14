#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "percfpp/geo_graph.hpp"
#include "percfpp/link_dynamics.hpp"
#include "percfpp/stats.hpp"

namespace percfpp {

inline constexpr double kUnreached = std::numeric_limits<double>::infinity();

// One delay per link, each >= tau.
class DelayField {
 public:
  DelayField(std::vector<double> delays, double tau, std::uint64_t seed = 0);

  const std::vector<double>& delays() const noexcept { return delays_; }
  double operator[](LinkId k) const noexcept { return delays_[k]; }
  std::size_t size() const noexcept { return delays_.size(); }
  double tau() const noexcept { return tau_; }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::vector<double> delays_;
  double tau_;
  std::uint64_t seed_;
};

// tau == 0: sample_fpp_delay per link; tau > 0: sample_propagation_delay.
DelayField sample_delay_field(const GeoGraph& graph, const OnOffSpec& spec, double tau,
                              std::uint64_t seed);

struct ShortestPathTree {
  std::vector<double> delay;         // kUnreached if no path
  std::vector<std::uint32_t> hops;   // hop count along the chosen path
  std::vector<std::int64_t> parent;  // -1 at the source and unreached nodes
};

// Dijkstra with a binary heap over non-negative link delays.
ShortestPathTree shortest_path_tree(const GeoGraph& graph, const DelayField& field, NodeId source);

// Minimum total delay over all paths; nullopt iff target is unreachable.
std::optional<double> min_delay(const GeoGraph& graph, const DelayField& field, NodeId source,
                                NodeId target);

struct BroadcastResult {
  std::vector<double> reception;     // first-reception time; kUnreached past the horizon
  std::vector<std::int64_t> parent;  // delivering neighbor, -1 for the source
};

// Discrete-event flooding from `source` at time 0. Each link carries its own
// stationary on-off trajectory (generated lazily, stream (seed, link id)).
// A node that receives at time t attempts every incident link: with tau == 0
// delivery happens at the first instant >= t the link is active; with tau > 0
// at (start of the first active stretch from t lasting >= tau) + tau.
// Requires exponential period laws.
BroadcastResult broadcast_event_driven(const GeoGraph& graph, const OnOffSpec& spec, double tau,
                                       NodeId source, double horizon, std::uint64_t seed);

struct RatioRow {
  std::uint32_t replicate;
  NodeId source;
  NodeId target;
  double distance;
  double delay;
  double ratio;
};

struct RatioCurve {
  std::vector<RatioRow> rows;
  std::size_t replicates_used = 0;
  std::size_t replicates_discarded = 0;
};

struct RatioCurveOptions {
  double density = 1.75;
  double window_side = 60.0;
  double tau = 0.0;
  std::size_t pairs_per_band = 30;  // per replicate
  std::size_t replicates = 30;
  std::size_t bands = 8;
  std::size_t sources_per_replicate = 4;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

inline constexpr double kMinBandDistance = 5.0;
inline constexpr double kBoundaryMarginFraction = 0.1;
inline constexpr double kMinGiantFraction = 0.1;

// Samples windows, keeps the largest component, draws one delay field per
// replicate and records T(u, v) / d(u, v) for source-target pairs stratified
// into distance bands over [5, 0.8 W]. Endpoints stay at least 0.1 W from the
// window boundary. Replicates whose largest component holds < 10% of nodes
// are discarded.
RatioCurve delay_ratio_curve(const OnOffSpec& spec, const RatioCurveOptions& options);

struct GammaEstimate {
  double gamma_hat = 0.0;
  double ci = 0.0;  // half-width of [ci_lo, ci_hi]
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double top_fraction = 0.25;
  std::size_t rows_used = 0;
  Estimate top_half;
  Estimate top_quarter;
  bool converged = false;
};

// Mean ratio over rows in the top distance quantile, with a 95% percentile
// bootstrap over replicates. converged: top-half and top-quarter estimates
// differ by at most their combined half-widths.
GammaEstimate estimate_gamma(const RatioCurve& curve, double top_fraction = 0.25,
                             std::uint64_t bootstrap_seed = 0x67616d6dULL,
                             std::size_t resamples = 1000);

struct GammaTauRow {
  double tau;
  GammaEstimate gamma;
};

// delay_ratio_curve + estimate_gamma per tau (same clouds for every tau).
std::vector<GammaTauRow> gamma_tau_study(const OnOffSpec& spec, RatioCurveOptions options,
                                         std::span<const double> tau_values,
                                         double top_fraction = 0.25);

}  // namespace percfpp
