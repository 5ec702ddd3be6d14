#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "percfpp/geo_graph.hpp"
#include "percfpp/link_mask.hpp"
#include "percfpp/stats.hpp"
#include "percfpp/thinning.hpp"

namespace percfpp {

// ---------------------------------------------------------------------------
// Density-coupled realizations.
//
// A replicate is a Poisson process on window x [0, inf) in "level" order:
// points arrive with i.i.d. uniform positions at exponential level spacings of
// mean 1/area. The points with level <= lambda form a PPP of density lambda,
// and every lower density is a prefix of every higher one. Link (i, j)
// (arrival indices) is retained iff coupled_link_uniform(seed, i, j) < p_e(d),
// so retained-link sets are also nested in lambda. Crossing and giant-component
// indicators are therefore monotone in lambda per replicate.
// ---------------------------------------------------------------------------

// Points of the coupled replicate `seed` with level <= lambda, in arrival order.
PointCloud coupled_cloud(double window_side, double lambda, std::uint64_t seed);

double coupled_link_uniform(std::uint64_t seed, NodeId i, NodeId j) noexcept;

// Thinning of a graph built on coupled_cloud(...) with the coupled uniforms.
LinkMask coupled_thinning(const GeoGraph& graph, const LinkProbability& prob, std::uint64_t seed);

struct CoupledTrajectory {
  // Smallest level at which [0, W]^2 is crossed left to right; +inf if the
  // crossing does not occur up to lambda_max.
  double crossing_level = 0.0;
  // Largest-component fraction at each requested level.
  std::vector<double> largest_fraction;
};

// One incremental union-find pass over the coupled replicate up to lambda_max.
CoupledTrajectory run_coupled_replicate(const LinkProbability& prob, double window_side,
                                        double lambda_max, std::span<const double> fraction_levels,
                                        std::uint64_t seed);

struct SweepPoint {
  double lambda = 0.0;
  double p_cross = 0.0;
  double ci = 0.0;
};

struct CriticalDensityEstimate {
  double lambda_hat = 0.0;
  double ci = 0.0;               // total half-width
  double monte_carlo_ci = 0.0;   // distribution-free CI of the crossing median
  double bracket_halfwidth = 0.0;
  double finite_size_drift = 0.0;
  double window_side = 0.0;
  std::size_t replicates = 0;
  std::vector<SweepPoint> probes;  // bisection probes in evaluation order
};

inline constexpr double kLambdaBracketLo = 0.1;
inline constexpr double kLambdaBracketHi = 10.0;

// Bisection on lambda for crossing probability 1/2 of the square window
// [0, W]^2. Throws EstimationError if the bracket [0.1, 10] does not straddle
// 1/2 (for example p_e == 0).
CriticalDensityEstimate estimate_critical_density(const LinkProbability& prob, double window_side,
                                                  std::size_t replicates, double tolerance,
                                                  std::uint64_t seed, unsigned threads = 1);

// Runs windows W/2 and W; reports the W estimate with |drift| added to ci.
CriticalDensityEstimate estimate_critical_density_two_windows(const LinkProbability& prob,
                                                              double window_side,
                                                              std::size_t replicates,
                                                              double tolerance, std::uint64_t seed,
                                                              unsigned threads = 1);

std::vector<SweepPoint> crossing_sweep(const LinkProbability& prob, double window_side,
                                       std::span<const double> lambdas, std::size_t replicates,
                                       std::uint64_t seed, unsigned threads = 1);

struct GiantTransition {
  Estimate lambda_hat;  // level of steepest increase of the mean largest fraction
  std::vector<double> levels;
  std::vector<Estimate> mean_fraction;
};

// Inflection of the mean largest-component fraction over an increasing grid
// of levels; ci from a replicate bootstrap plus half the grid spacing.
GiantTransition estimate_giant_transition(const LinkProbability& prob, double window_side,
                                          std::span<const double> levels, std::size_t replicates,
                                          std::uint64_t seed, unsigned threads = 1);

struct DecayPoint {
  double h = 0.0;
  double p_conn = 0.0;
  double ci = 0.0;
  std::size_t hits = 0;
  std::size_t replicates = 0;
};

struct LogLinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;
  std::size_t points_used = 0;

  double c1() const;
  double c2() const noexcept { return -slope; }
};

// Weighted least squares of log p on h, weights n*p/(1-p) (inverse delta-method
// variance). Points with zero hits are skipped.
LogLinearFit fit_log_linear(std::span<const DecayPoint> points);

struct DecayProfile {
  std::vector<DecayPoint> points;
  LogLinearFit fit;
  double lambda_c_reference = 0.0;
  bool supercritical_warning = false;
};

// Pr(origin connects to a node outside B(h) = [-h, h]^2) for each h, on fresh
// clouds over [-(h + 1.5), h + 1.5]^2 with a node added at the origin. If no
// reference critical density is given, one is estimated (window 20).
DecayProfile connection_decay_profile(double density, const LinkProbability& prob,
                                      std::span<const double> h_values, std::size_t replicates,
                                      std::uint64_t seed, unsigned threads = 1,
                                      std::optional<double> lambda_c_reference = std::nullopt);

}  // namespace percfpp
