#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "percfpp/geo_graph.hpp"
#include "percfpp/link_mask.hpp"
#include "percfpp/rng.hpp"
#include "percfpp/thinning.hpp"

namespace percfpp {

enum class PeriodFamily {
  exponential,
  deterministic,
  uniform,  // uniform on [0, 2 * mean]
};

std::string to_string(PeriodFamily family);
PeriodFamily parse_period_family(const std::string& name);

// Mean period length as a function of link length: intercept + slope * d.
struct MeanFunction {
  double intercept = 1.0;
  double slope = 0.0;

  double operator()(double d) const noexcept { return intercept + slope * d; }
  friend bool operator==(const MeanFunction&, const MeanFunction&) = default;
};

// Law of one kind of period (active or inactive) for a link of length d.
struct PeriodLaw {
  PeriodFamily family = PeriodFamily::exponential;
  MeanFunction mean;

  double sample(Rng& rng, double d) const;
  // Equilibrium residual: density (1 - F(t)) / mean.
  double sample_residual(Rng& rng, double d) const;
  double cdf(double t, double d) const;
  // Survival of the equilibrium residual.
  double residual_survival(double t, double d) const;

  friend bool operator==(const PeriodLaw&, const PeriodLaw&) = default;
};

// Alternating renewal on-off process of a link: inactive periods Y(d),
// active periods Z(d). Validated on d in (0, 1]: both means positive and
// finite there.
class OnOffSpec {
 public:
  OnOffSpec(PeriodLaw inactive, PeriodLaw active);

  static OnOffSpec exponential(double active_mean, double inactive_mean);

  const PeriodLaw& inactive() const noexcept { return inactive_; }
  const PeriodLaw& active() const noexcept { return active_; }
  bool memoryless() const noexcept {
    return inactive_.family == PeriodFamily::exponential &&
           active_.family == PeriodFamily::exponential;
  }

  friend bool operator==(const OnOffSpec&, const OnOffSpec&) = default;

 private:
  PeriodLaw inactive_;
  PeriodLaw active_;
};

void require_link_length(double d);

// eta_1(d) = E[Z(d)] / (E[Z(d)] + E[Y(d)])
double stationary_active_ratio(const OnOffSpec& spec, double d);
// eta_0(d) = 1 - eta_1(d)
double stationary_inactive_ratio(const OnOffSpec& spec, double d);

// p_e(d) := eta_1(d) as a link probability.
LinkProbability active_ratio_probability(const OnOffSpec& spec);

// Stationary snapshot: identical bits to thin_links(graph, eta_1, seed), with
// provenance snapshot.
LinkMask sample_snapshot(const GeoGraph& graph, const OnOffSpec& spec, std::uint64_t seed);

struct DelaySample {
  double value = 0.0;
  bool zero_flag = false;  // link active at the query instant
};

// Zero with probability eta_1(d); otherwise the equilibrium residual of the
// inactive period.
DelaySample sample_fpp_delay(const OnOffSpec& spec, double d, Rng& rng);
DelaySample sample_fpp_delay(const OnOffSpec& spec, double d, std::uint64_t seed);

struct PropagationSample {
  DelaySample delay;         // zero_flag: initially active
  std::uint64_t attempts;    // K: index of the first active period >= tau
  double final_inactive;     // Y_K, or 0 when initially active and K == 1
};

// Delay with per-hop propagation time tau: the packet is delivered at the
// start of the first active period of length >= tau, plus tau. Every period,
// including the one in progress at the query instant, is an ordinary draw of
// its law (exact for exponential laws by memorylessness).
PropagationSample sample_propagation_delay(const OnOffSpec& spec, double d, double tau, Rng& rng);
PropagationSample sample_propagation_delay(const OnOffSpec& spec, double d, double tau,
                                           std::uint64_t seed);

enum class LinkState : std::uint8_t { inactive = 0, active = 1 };

struct Period {
  LinkState state;
  double duration;
};

// Stationary alternating renewal trajectory covering [0, horizon]; the last
// period may extend past the horizon.
std::vector<Period> simulate_trajectory(const OnOffSpec& spec, double d, double horizon,
                                        std::uint64_t seed);

// Fraction of [0, horizon] spent active.
double active_time_fraction(const std::vector<Period>& trajectory, double horizon);

}  // namespace percfpp

#include "percfpp/stats.hpp"

namespace percfpp {

struct SnapshotComparison {
  double density = 0.0;
  Estimate snapshot_largest_fraction;
  Estimate thinning_largest_fraction;
  Estimate snapshot_active_fraction;
  Estimate thinning_active_fraction;

  bool agree() const noexcept {
    return agree_within_ci(snapshot_largest_fraction, thinning_largest_fraction);
  }
};

// Largest-component and active-link fractions under sample_snapshot versus
// an independent thin_links with p_e = eta_1, on the same per-replicate graphs.
SnapshotComparison compare_snapshot_with_thinning(const OnOffSpec& spec, double density,
                                                  double window_side, std::size_t replicates,
                                                  std::uint64_t seed, unsigned threads = 1);

}  // namespace percfpp
