#include "percfpp/fpp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>

#include "percfpp/components.hpp"
#include "percfpp/errors.hpp"
#include "percfpp/parallel.hpp"
#include "percfpp/rng.hpp"

namespace percfpp {

DelayField::DelayField(std::vector<double> delays, double tau, std::uint64_t seed)
    : delays_(std::move(delays)), tau_(tau), seed_(seed) {
  if (!(tau >= 0.0)) throw InvalidInput("tau must be non-negative");
  for (double v : delays_) {
    if (!(v >= tau)) throw InvalidInput("link delay below the propagation floor tau");
  }
}

DelayField sample_delay_field(const GeoGraph& graph, const OnOffSpec& spec, double tau,
                              std::uint64_t seed) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw InvalidInput("tau must be finite and >= 0");
  Rng rng(seed);
  std::vector<double> delays(graph.link_count());
  for (LinkId k = 0; k < graph.link_count(); ++k) {
    // Coincident nodes give d == 0; evaluate such links as d -> 0+.
    const double d = std::max(graph.link(k).length, 1e-12);
    delays[k] = tau == 0.0 ? sample_fpp_delay(spec, d, rng).value
                           : sample_propagation_delay(spec, d, tau, rng).delay.value;
  }
  return DelayField(std::move(delays), tau, seed);
}

namespace {

void require_node(const GeoGraph& graph, NodeId n) {
  if (n >= graph.node_count()) {
    throw InvalidInput("node id " + std::to_string(n) + " out of range (" +
                       std::to_string(graph.node_count()) + " nodes)");
  }
}

using QueueEntry = std::pair<double, NodeId>;
using MinQueue = std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>>;

}  // namespace

ShortestPathTree shortest_path_tree(const GeoGraph& graph, const DelayField& field, NodeId source) {
  require_node(graph, source);
  if (field.size() != graph.link_count()) throw InvalidInput("delay field size mismatch");
  const std::size_t n = graph.node_count();
  ShortestPathTree tree{std::vector<double>(n, kUnreached), std::vector<std::uint32_t>(n, 0),
                        std::vector<std::int64_t>(n, -1)};
  std::vector<std::uint8_t> done(n, 0);
  MinQueue queue;
  tree.delay[source] = 0.0;
  queue.push({0.0, source});
  while (!queue.empty()) {
    const auto [t, v] = queue.top();
    queue.pop();
    if (done[v]) continue;
    done[v] = 1;
    for (LinkId k : graph.incident(v)) {
      const NodeId w = graph.link(k).other(v);
      const double cand = t + field[k];
      if (cand < tree.delay[w]) {
        tree.delay[w] = cand;
        tree.hops[w] = tree.hops[v] + 1;
        tree.parent[w] = v;
        queue.push({cand, w});
      }
    }
  }
  return tree;
}

std::optional<double> min_delay(const GeoGraph& graph, const DelayField& field, NodeId source,
                                NodeId target) {
  require_node(graph, source);
  require_node(graph, target);
  if (source == target) return 0.0;
  const double t = shortest_path_tree(graph, field, source).delay[target];
  if (t == kUnreached) return std::nullopt;
  return t;
}

namespace {

// Lazily generated stationary on-off trajectory of one link.
class LinkClock {
 public:
  LinkClock(const OnOffSpec& spec, double d, std::uint64_t seed) : spec_(&spec), d_(d), rng_(seed) {
    active_ = rng_.uniform() < stationary_active_ratio(spec, d);
    end_ = law().sample_residual(rng_, d_);
  }

  // Earliest delivery time for a transmission attempt starting at t.
  double deliver(double t, double tau) {
    while (end_ <= t) flip();
    if (active_ && end_ - t >= tau) return t + tau;
    for (;;) {
      flip();
      if (active_ && end_ - start_ >= tau) return start_ + tau;
    }
  }

 private:
  const PeriodLaw& law() const { return active_ ? spec_->active() : spec_->inactive(); }
  void flip() {
    active_ = !active_;
    start_ = end_;
    end_ += law().sample(rng_, d_);
  }

  const OnOffSpec* spec_;
  double d_;
  Rng rng_;
  bool active_;
  double start_ = 0.0;
  double end_;
};

}  // namespace

BroadcastResult broadcast_event_driven(const GeoGraph& graph, const OnOffSpec& spec, double tau,
                                       NodeId source, double horizon, std::uint64_t seed) {
  require_node(graph, source);
  if (!spec.memoryless()) {
    throw InvalidInput("event-driven broadcast requires exponential active and inactive periods");
  }
  if (!(horizon > 0.0)) throw InvalidInput("horizon must be positive");
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw InvalidInput("tau must be finite and >= 0");

  const std::size_t n = graph.node_count();
  BroadcastResult out{std::vector<double>(n, kUnreached), std::vector<std::int64_t>(n, -1)};
  std::vector<std::uint8_t> done(n, 0);
  MinQueue queue;
  out.reception[source] = 0.0;
  queue.push({0.0, source});
  while (!queue.empty()) {
    const auto [t, v] = queue.top();
    queue.pop();
    if (done[v]) continue;
    if (t > horizon) break;
    done[v] = 1;
    for (LinkId k : graph.incident(v)) {
      const NodeId w = graph.link(k).other(v);
      if (done[w]) continue;
      // The first settled endpoint is the only one that ever queries link k.
      const double d = std::max(graph.link(k).length, 1e-12);
      LinkClock clock(spec, d, stream_seed(seed, k));
      const double arrival = clock.deliver(t, tau);
      if (arrival < out.reception[w]) {
        out.reception[w] = arrival;
        out.parent[w] = v;
        queue.push({arrival, w});
      }
    }
  }
  for (NodeId v = 0; v < n; ++v) {
    if (!done[v]) {
      out.reception[v] = kUnreached;
      out.parent[v] = -1;
    }
  }
  return out;
}

RatioCurve delay_ratio_curve(const OnOffSpec& spec, const RatioCurveOptions& o) {
  if (!(o.density > 0.0)) throw InvalidInput("density must be positive");
  if (!(o.window_side > 0.0)) throw InvalidInput("window side must be positive");
  const double top = 0.8 * o.window_side;
  if (!(top > kMinBandDistance)) throw InvalidInput("window side too small for distance bands");
  if (o.replicates < 1 || o.bands < 1 || o.sources_per_replicate < 1 || o.pairs_per_band < 1) {
    throw InvalidInput("replicates, bands, sources and pairs per band must be >= 1");
  }
  if (!(o.tau >= 0.0)) throw InvalidInput("tau must be non-negative");

  const double margin = kBoundaryMarginFraction * o.window_side;
  const double band_width = (top - kMinBandDistance) / static_cast<double>(o.bands);
  const std::size_t quota =
      (o.pairs_per_band + o.sources_per_replicate - 1) / o.sources_per_replicate;

  std::vector<std::vector<RatioRow>> per_rep(o.replicates);
  std::vector<std::uint8_t> discarded(o.replicates, 0);
  parallel_for(o.replicates, resolve_threads(o.threads), [&](std::size_t r) {
    const std::uint64_t rs = stream_seed(o.seed, r);
    const GeoGraph graph =
        build_graph(sample_poisson(Region::square(o.window_side), o.density, rs), 1.0);
    const ComponentLabeling labels = label_components(graph);
    if (labels.largest_fraction() < kMinGiantFraction) {
      discarded[r] = 1;
      return;
    }
    std::vector<NodeId> inner;
    for (NodeId v = 0; v < graph.node_count(); ++v) {
      const Point p = graph.position(v);
      if (labels.labels[v] == labels.largest_id && p.x >= margin && p.x <= o.window_side - margin &&
          p.y >= margin && p.y <= o.window_side - margin) {
        inner.push_back(v);
      }
    }
    if (inner.size() < 2) {
      discarded[r] = 1;
      return;
    }
    // The field depends only on (graph, tau, stream): tau sweeps share clouds.
    const DelayField field = sample_delay_field(graph, spec, o.tau, mix64(rs));
    Rng pick(mix64(rs ^ 0x7069636bULL));
    std::vector<std::vector<NodeId>> band_targets(o.bands);
    for (std::size_t s = 0; s < o.sources_per_replicate; ++s) {
      const NodeId source = inner[static_cast<std::size_t>(pick.uniform() * inner.size())];
      const ShortestPathTree tree = shortest_path_tree(graph, field, source);
      for (auto& b : band_targets) b.clear();
      const Point ps = graph.position(source);
      for (NodeId v : inner) {
        const double d = distance(ps, graph.position(v));
        if (d < kMinBandDistance || d >= top) continue;
        const auto band = std::min(o.bands - 1, static_cast<std::size_t>((d - kMinBandDistance) / band_width));
        band_targets[band].push_back(v);
      }
      for (auto& targets : band_targets) {
        const std::size_t take = std::min(quota, targets.size());
        for (std::size_t i = 0; i < take; ++i) {
          const std::size_t j = i + static_cast<std::size_t>(pick.uniform() * (targets.size() - i));
          std::swap(targets[i], targets[j]);
          const NodeId target = targets[i];
          const double d = distance(ps, graph.position(target));
          const double t = tree.delay[target];
          per_rep[r].push_back({static_cast<std::uint32_t>(r), source, target, d, t, t / d});
        }
      }
    }
  });

  RatioCurve curve;
  for (std::size_t r = 0; r < o.replicates; ++r) {
    if (discarded[r]) {
      ++curve.replicates_discarded;
      continue;
    }
    ++curve.replicates_used;
    curve.rows.insert(curve.rows.end(), per_rep[r].begin(), per_rep[r].end());
  }
  return curve;
}

namespace {

struct GroupedRatios {
  std::vector<double> sums;
  std::vector<double> counts;
};

// Per-replicate sums of ratios over rows with distance >= threshold.
GroupedRatios group_top(const RatioCurve& curve, double threshold) {
  std::uint32_t max_rep = 0;
  for (const auto& row : curve.rows) max_rep = std::max(max_rep, row.replicate);
  GroupedRatios g{std::vector<double>(max_rep + 1, 0.0), std::vector<double>(max_rep + 1, 0.0)};
  for (const auto& row : curve.rows) {
    if (row.distance >= threshold) {
      g.sums[row.replicate] += row.ratio;
      g.counts[row.replicate] += 1.0;
    }
  }
  std::vector<double> sums, counts;
  for (std::size_t r = 0; r < g.sums.size(); ++r) {
    if (g.counts[r] > 0) {
      sums.push_back(g.sums[r]);
      counts.push_back(g.counts[r]);
    }
  }
  return {std::move(sums), std::move(counts)};
}

struct BootstrapResult {
  double point;
  double lo;
  double hi;
  std::size_t rows;
};

BootstrapResult bootstrap_top(const RatioCurve& curve, double top_fraction, std::uint64_t seed,
                              std::size_t resamples) {
  std::vector<double> distances;
  distances.reserve(curve.rows.size());
  for (const auto& row : curve.rows) distances.push_back(row.distance);
  std::sort(distances.begin(), distances.end());
  const auto cut = static_cast<std::size_t>(
      std::floor((1.0 - top_fraction) * static_cast<double>(distances.size())));
  const double threshold = distances[std::min(cut, distances.size() - 1)];
  const GroupedRatios g = group_top(curve, threshold);

  double total = 0, n = 0;
  for (std::size_t i = 0; i < g.sums.size(); ++i) {
    total += g.sums[i];
    n += g.counts[i];
  }
  const double point = total / n;
  Rng rng(seed);
  std::vector<double> stats;
  stats.reserve(resamples);
  const std::size_t groups = g.sums.size();
  for (std::size_t b = 0; b < resamples; ++b) {
    double s = 0, c = 0;
    for (std::size_t i = 0; i < groups; ++i) {
      const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(groups));
      s += g.sums[j];
      c += g.counts[j];
    }
    stats.push_back(s / c);
  }
  std::sort(stats.begin(), stats.end());
  const double lo = stats[static_cast<std::size_t>(0.025 * static_cast<double>(resamples - 1))];
  const double hi = stats[static_cast<std::size_t>(std::ceil(0.975 * static_cast<double>(resamples - 1)))];
  return {point, std::min(lo, point), std::max(hi, point), static_cast<std::size_t>(n)};
}

Estimate as_estimate(const BootstrapResult& b) { return {b.point, 0.5 * (b.hi - b.lo)}; }

}  // namespace

GammaEstimate estimate_gamma(const RatioCurve& curve, double top_fraction,
                             std::uint64_t bootstrap_seed, std::size_t resamples) {
  if (curve.rows.empty()) throw InvalidInput("ratio curve is empty");
  if (!(top_fraction > 0.0 && top_fraction <= 1.0)) {
    throw InvalidInput("top_fraction must lie in (0, 1]");
  }
  if (resamples < 2) throw InvalidInput("need at least 2 bootstrap resamples");
  GammaEstimate est;
  const auto main = bootstrap_top(curve, top_fraction, bootstrap_seed, resamples);
  est.gamma_hat = main.point;
  est.ci_lo = main.lo;
  est.ci_hi = main.hi;
  est.ci = 0.5 * (main.hi - main.lo);
  est.top_fraction = top_fraction;
  est.rows_used = main.rows;
  est.top_half = as_estimate(bootstrap_top(curve, 0.5, mix64(bootstrap_seed + 1), resamples));
  est.top_quarter = as_estimate(bootstrap_top(curve, 0.25, mix64(bootstrap_seed + 2), resamples));
  est.converged = agree_within_ci(est.top_half, est.top_quarter);
  return est;
}

std::vector<GammaTauRow> gamma_tau_study(const OnOffSpec& spec, RatioCurveOptions options,
                                         std::span<const double> tau_values, double top_fraction) {
  for (std::size_t i = 0; i < tau_values.size(); ++i) {
    if (!(tau_values[i] > 0.0) || (i > 0 && !(tau_values[i] < tau_values[i - 1]))) {
      throw InvalidInput("tau values must be positive and strictly decreasing");
    }
  }
  std::vector<GammaTauRow> out;
  for (double tau : tau_values) {
    options.tau = tau;
    out.push_back({tau, estimate_gamma(delay_ratio_curve(spec, options), top_fraction)});
  }
  return out;
}

}  // namespace percfpp
