#include "percfpp/link_dynamics.hpp"

#include <cmath>

#include "percfpp/errors.hpp"

namespace percfpp {

std::string to_string(PeriodFamily family) {
  switch (family) {
    case PeriodFamily::exponential:
      return "exponential";
    case PeriodFamily::deterministic:
      return "deterministic";
    case PeriodFamily::uniform:
      return "uniform";
  }
  return "?";
}

PeriodFamily parse_period_family(const std::string& name) {
  if (name == "exponential") return PeriodFamily::exponential;
  if (name == "deterministic") return PeriodFamily::deterministic;
  if (name == "uniform") return PeriodFamily::uniform;
  throw InvalidInput("unknown period family '" + name + "'");
}

double PeriodLaw::sample(Rng& rng, double d) const {
  const double m = mean(d);
  switch (family) {
    case PeriodFamily::exponential:
      return rng.exponential(m);
    case PeriodFamily::deterministic:
      return m;
    case PeriodFamily::uniform:
      return 2.0 * m * rng.uniform_open();
  }
  return m;
}

double PeriodLaw::sample_residual(Rng& rng, double d) const {
  const double m = mean(d);
  switch (family) {
    case PeriodFamily::exponential:
      return rng.exponential(m);
    case PeriodFamily::deterministic:
      return m * rng.uniform_open();
    case PeriodFamily::uniform:
      // F_e(t) = (t - t^2 / (4m)) / m on [0, 2m]
      return 2.0 * m * (1.0 - std::sqrt(1.0 - rng.uniform_open()));
  }
  return m;
}

double PeriodLaw::cdf(double t, double d) const {
  if (t < 0.0) return 0.0;
  const double m = mean(d);
  switch (family) {
    case PeriodFamily::exponential:
      return 1.0 - std::exp(-t / m);
    case PeriodFamily::deterministic:
      return t >= m ? 1.0 : 0.0;
    case PeriodFamily::uniform:
      return std::min(1.0, t / (2.0 * m));
  }
  return 0.0;
}

double PeriodLaw::residual_survival(double t, double d) const {
  if (t <= 0.0) return 1.0;
  const double m = mean(d);
  switch (family) {
    case PeriodFamily::exponential:
      return std::exp(-t / m);
    case PeriodFamily::deterministic:
      return t >= m ? 0.0 : 1.0 - t / m;
    case PeriodFamily::uniform:
      return t >= 2.0 * m ? 0.0 : 1.0 - (t - t * t / (4.0 * m)) / m;
  }
  return 0.0;
}

namespace {

void validate_law(const PeriodLaw& law, const char* which) {
  const double m0 = law.mean.intercept;
  const double m1 = law.mean(1.0);
  // Affine, so the extremes over (0, 1] are at the end points.
  if (!(std::isfinite(m0) && std::isfinite(m1) && m0 > 0.0 && m1 > 0.0)) {
    throw InvalidInput(std::string(which) +
                       " period mean must be positive and finite for link lengths in (0, 1]");
  }
}

}  // namespace

OnOffSpec::OnOffSpec(PeriodLaw inactive, PeriodLaw active)
    : inactive_(inactive), active_(active) {
  validate_law(inactive_, "inactive");
  validate_law(active_, "active");
}

OnOffSpec OnOffSpec::exponential(double active_mean, double inactive_mean) {
  return OnOffSpec({PeriodFamily::exponential, {inactive_mean, 0.0}},
                   {PeriodFamily::exponential, {active_mean, 0.0}});
}

void require_link_length(double d) {
  if (!(d > 0.0 && d <= 1.0)) {
    throw InvalidInput("link length must lie in (0, 1], got " + std::to_string(d));
  }
}

double stationary_active_ratio(const OnOffSpec& spec, double d) {
  require_link_length(d);
  const double z = spec.active().mean(d);
  const double y = spec.inactive().mean(d);
  return z / (z + y);
}

double stationary_inactive_ratio(const OnOffSpec& spec, double d) {
  require_link_length(d);
  const double z = spec.active().mean(d);
  const double y = spec.inactive().mean(d);
  return y / (z + y);
}

LinkProbability active_ratio_probability(const OnOffSpec& spec) {
  return LinkProbability::custom(
      [spec](double d) {
        // Coincident nodes have d == 0; evaluate the mean functions there too.
        const double z = spec.active().mean(d);
        const double y = spec.inactive().mean(d);
        return z / (z + y);
      },
      "eta1");
}

LinkMask sample_snapshot(const GeoGraph& graph, const OnOffSpec& spec, std::uint64_t seed) {
  return thin_links(graph, active_ratio_probability(spec), seed, MaskProvenance::snapshot);
}

DelaySample sample_fpp_delay(const OnOffSpec& spec, double d, Rng& rng) {
  const double eta1 = stationary_active_ratio(spec, d);
  if (rng.uniform() < eta1) return {0.0, true};
  return {spec.inactive().sample_residual(rng, d), false};
}

DelaySample sample_fpp_delay(const OnOffSpec& spec, double d, std::uint64_t seed) {
  Rng rng(seed);
  return sample_fpp_delay(spec, d, rng);
}

PropagationSample sample_propagation_delay(const OnOffSpec& spec, double d, double tau, Rng& rng) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw InvalidInput("propagation delay tau must satisfy 0 < tau < inf");
  }
  const double eta1 = stationary_active_ratio(spec, d);
  PropagationSample out{{0.0, false}, 0, 0.0};
  double elapsed = 0.0;
  const bool start_active = rng.uniform() < eta1;
  out.delay.zero_flag = start_active;
  if (!start_active) {
    out.final_inactive = spec.inactive().sample(rng, d);
    elapsed += out.final_inactive;
  }
  for (;;) {
    const double z = spec.active().sample(rng, d);
    ++out.attempts;
    if (z >= tau) break;
    elapsed += z;
    out.final_inactive = spec.inactive().sample(rng, d);
    elapsed += out.final_inactive;
  }
  out.delay.value = elapsed + tau;
  return out;
}

PropagationSample sample_propagation_delay(const OnOffSpec& spec, double d, double tau,
                                           std::uint64_t seed) {
  Rng rng(seed);
  return sample_propagation_delay(spec, d, tau, rng);
}

std::vector<Period> simulate_trajectory(const OnOffSpec& spec, double d, double horizon,
                                        std::uint64_t seed) {
  if (!(horizon > 0.0)) throw InvalidInput("trajectory horizon must be positive");
  Rng rng(seed);
  const double eta1 = stationary_active_ratio(spec, d);
  LinkState state = rng.uniform() < eta1 ? LinkState::active : LinkState::inactive;
  auto law = [&](LinkState s) -> const PeriodLaw& {
    return s == LinkState::active ? spec.active() : spec.inactive();
  };
  std::vector<Period> out;
  double t = law(state).sample_residual(rng, d);
  out.push_back({state, t});
  while (t < horizon) {
    state = state == LinkState::active ? LinkState::inactive : LinkState::active;
    const double len = law(state).sample(rng, d);
    out.push_back({state, len});
    t += len;
  }
  return out;
}

double active_time_fraction(const std::vector<Period>& trajectory, double horizon) {
  double t = 0.0, on = 0.0;
  for (const Period& p : trajectory) {
    if (t >= horizon) break;
    const double len = std::min(p.duration, horizon - t);
    if (p.state == LinkState::active) on += len;
    t += len;
  }
  return on / horizon;
}

}  // namespace percfpp

#include "percfpp/components.hpp"
#include "percfpp/parallel.hpp"

namespace percfpp {

SnapshotComparison compare_snapshot_with_thinning(const OnOffSpec& spec, double density,
                                                  double window_side, std::size_t replicates,
                                                  std::uint64_t seed, unsigned threads) {
  if (replicates < 2) throw InvalidInput("replicates must be >= 2");
  std::vector<double> snap_lc(replicates), thin_lc(replicates);
  std::vector<double> snap_af(replicates), thin_af(replicates);
  const LinkProbability eta1 = active_ratio_probability(spec);
  parallel_for(replicates, resolve_threads(threads), [&](std::size_t r) {
    const std::uint64_t rs = stream_seed(seed, r);
    const GeoGraph graph = build_graph(sample_poisson(Region::square(window_side), density, rs), 1.0);
    const LinkMask snap = sample_snapshot(graph, spec, mix64(rs ^ 1));
    const LinkMask thin = thin_links(graph, eta1, mix64(rs ^ 2));
    snap_lc[r] = label_components(graph, snap).largest_fraction();
    thin_lc[r] = label_components(graph, thin).largest_fraction();
    snap_af[r] = snap.active_fraction();
    thin_af[r] = thin.active_fraction();
  });
  return {density, mean_estimate(snap_lc), mean_estimate(thin_lc), mean_estimate(snap_af),
          mean_estimate(thin_af)};
}

}  // namespace percfpp
