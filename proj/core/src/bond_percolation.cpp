#include "percfpp/bond_percolation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "percfpp/components.hpp"
#include "percfpp/errors.hpp"
#include "percfpp/parallel.hpp"
#include "percfpp/rng.hpp"
#include "percfpp/spatial_grid.hpp"

namespace percfpp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Emits the coupled replicate's points in level order.
class LevelStream {
 public:
  LevelStream(double window_side, std::uint64_t seed)
      : side_(window_side), mean_gap_(1.0 / (window_side * window_side)), rng_(seed) {}

  // Next point if its level is <= limit.
  bool next(double limit, Point& p, double& level) {
    level_ += rng_.exponential(mean_gap_);
    if (level_ > limit) return false;
    p.x = rng_.uniform(0.0, side_);
    p.y = rng_.uniform(0.0, side_);
    level = level_;
    return true;
  }

 private:
  double side_;
  double mean_gap_;
  Rng rng_;
  double level_ = 0.0;
};

void require_window(double window_side) {
  if (!(window_side > 0.0)) throw InvalidInput("window side must be positive");
}

double crossing_probability_at(std::span<const double> sorted_levels, double lambda) {
  const auto hits = std::upper_bound(sorted_levels.begin(), sorted_levels.end(), lambda) -
                    sorted_levels.begin();
  return static_cast<double>(hits) / static_cast<double>(sorted_levels.size());
}

std::vector<double> crossing_levels(const LinkProbability& prob, double window_side,
                                    std::size_t replicates, double lambda_max, std::uint64_t seed,
                                    unsigned threads) {
  std::vector<double> levels(replicates);
  parallel_for(replicates, resolve_threads(threads), [&](std::size_t r) {
    levels[r] = run_coupled_replicate(prob, window_side, lambda_max, {}, stream_seed(seed, r))
                    .crossing_level;
  });
  std::sort(levels.begin(), levels.end());
  return levels;
}

}  // namespace

PointCloud coupled_cloud(double window_side, double lambda, std::uint64_t seed) {
  require_window(window_side);
  if (!(lambda >= 0.0)) throw InvalidInput("density must be non-negative");
  LevelStream stream(window_side, seed);
  std::vector<Point> points;
  Point p;
  double level = 0.0;
  while (stream.next(lambda, p, level)) points.push_back(p);
  return PointCloud(std::move(points), Region::square(window_side), lambda, seed);
}

double coupled_link_uniform(std::uint64_t seed, NodeId i, NodeId j) noexcept {
  if (i > j) std::swap(i, j);
  return hashed_uniform(seed, i, j);
}

LinkMask coupled_thinning(const GeoGraph& graph, const LinkProbability& prob, std::uint64_t seed) {
  std::vector<std::uint8_t> bits(graph.link_count());
  for (LinkId k = 0; k < graph.link_count(); ++k) {
    const Link& l = graph.link(k);
    bits[k] = coupled_link_uniform(seed, l.a, l.b) < prob(l.length) ? 1 : 0;
  }
  return LinkMask(std::move(bits), MaskProvenance::thinning, seed);
}

CoupledTrajectory run_coupled_replicate(const LinkProbability& prob, double window_side,
                                        double lambda_max, std::span<const double> fraction_levels,
                                        std::uint64_t seed) {
  require_window(window_side);
  if (!std::is_sorted(fraction_levels.begin(), fraction_levels.end())) {
    throw InvalidInput("fraction levels must be increasing");
  }
  if (!fraction_levels.empty()) lambda_max = std::max(lambda_max, fraction_levels.back());

  CoupledTrajectory out;
  out.crossing_level = kInf;
  out.largest_fraction.reserve(fraction_levels.size());

  LevelStream stream(window_side, seed);
  SpatialGrid grid(Region::square(window_side), 1.0);
  UnionFind uf(0);
  std::vector<Point> points;
  std::vector<std::uint8_t> flags;  // indexed by node; meaningful at roots
  std::size_t largest = 0;
  std::size_t next_level = 0;

  auto record_until = [&](double level) {
    while (next_level < fraction_levels.size() && fraction_levels[next_level] < level) {
      out.largest_fraction.push_back(
          points.empty() ? 0.0
                         : static_cast<double>(largest) / static_cast<double>(points.size()));
      ++next_level;
    }
  };

  Point p;
  double level = 0.0;
  while (stream.next(lambda_max, p, level)) {
    record_until(level);
    const NodeId id = uf.add();
    points.push_back(p);
    std::uint8_t f = 0;
    if (p.x > 0.0 && p.x < 1.0) f |= 1;
    if (window_side - p.x > 0.0 && window_side - p.x < 1.0) f |= 2;
    flags.push_back(f);

    grid.for_each_near(p, [&](std::uint32_t j) {
      const double d = distance(points[j], p);
      if (d > 1.0 || !(coupled_link_uniform(seed, j, id) < prob(d))) return;
      const std::uint8_t merged = flags[uf.find(j)] | flags[uf.find(id)];
      const auto root = uf.unite(j, id);
      flags[root] = merged;
    });
    grid.insert(id, p);

    const auto root = uf.find(id);
    largest = std::max(largest, uf.size_of(root));
    if (flags[root] == 3 && out.crossing_level == kInf) out.crossing_level = level;
  }
  record_until(kInf);
  return out;
}

CriticalDensityEstimate estimate_critical_density(const LinkProbability& prob, double window_side,
                                                  std::size_t replicates, double tolerance,
                                                  std::uint64_t seed, unsigned threads) {
  if (!(window_side >= 20.0)) throw InvalidInput("window side must be at least 20 radii");
  if (!(tolerance > 0.0)) throw InvalidInput("tolerance must be positive");
  if (replicates < 1) throw InvalidInput("replicates must be >= 1");

  const auto levels =
      crossing_levels(prob, window_side, replicates, kLambdaBracketHi, seed, threads);
  CriticalDensityEstimate est;
  est.window_side = window_side;
  est.replicates = replicates;

  auto probe = [&](double lambda) {
    const double p = crossing_probability_at(levels, lambda);
    const Estimate e = proportion(static_cast<std::size_t>(std::lround(p * replicates)), replicates);
    est.probes.push_back({lambda, e.value, e.ci});
    return p;
  };

  double lo = kLambdaBracketLo;
  double hi = kLambdaBracketHi;
  if (probe(lo) >= 0.5 || probe(hi) < 0.5) {
    throw EstimationError("crossing probability does not pass 1/2 within lambda in [0.1, 10]; " +
                          std::string("link probability '") + prob.describe() +
                          "' is degenerate for this window");
  }
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (probe(mid) >= 0.5) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  est.lambda_hat = 0.5 * (lo + hi);
  est.bracket_halfwidth = 0.5 * (hi - lo);

  // Order-statistic interval for the median of the per-replicate thresholds.
  const double half = kZ95 * 0.5 / std::sqrt(static_cast<double>(replicates));
  auto quantile = [&](double q) {
    const auto idx = static_cast<std::ptrdiff_t>(std::ceil(q * static_cast<double>(replicates))) - 1;
    return levels[static_cast<std::size_t>(
        std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(replicates) - 1))];
  };
  est.monte_carlo_ci = 0.5 * (quantile(0.5 + half) - quantile(0.5 - half));
  est.ci = est.monte_carlo_ci + est.bracket_halfwidth;
  return est;
}

CriticalDensityEstimate estimate_critical_density_two_windows(const LinkProbability& prob,
                                                              double window_side,
                                                              std::size_t replicates,
                                                              double tolerance, std::uint64_t seed,
                                                              unsigned threads) {
  const auto small =
      estimate_critical_density(prob, 0.5 * window_side, replicates, tolerance, mix64(seed), threads);
  auto large = estimate_critical_density(prob, window_side, replicates, tolerance, seed, threads);
  large.finite_size_drift = std::abs(large.lambda_hat - small.lambda_hat);
  large.ci += large.finite_size_drift;
  return large;
}

std::vector<SweepPoint> crossing_sweep(const LinkProbability& prob, double window_side,
                                       std::span<const double> lambdas, std::size_t replicates,
                                       std::uint64_t seed, unsigned threads) {
  if (replicates < 1) throw InvalidInput("replicates must be >= 1");
  double lambda_max = 0.0;
  for (double l : lambdas) lambda_max = std::max(lambda_max, l);
  const auto levels = crossing_levels(prob, window_side, replicates, lambda_max, seed, threads);
  std::vector<SweepPoint> out;
  for (double l : lambdas) {
    const double p = crossing_probability_at(levels, l);
    const Estimate e = proportion(static_cast<std::size_t>(std::lround(p * replicates)), replicates);
    out.push_back({l, e.value, e.ci});
  }
  return out;
}

namespace {

// Location of the steepest rise of a curve on an increasing grid, refined by
// a parabola through the neighboring slopes.
double steepest_rise(std::span<const double> levels, std::span<const double> curve) {
  const std::size_t n = levels.size();
  std::vector<double> slope(n, -kInf);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    slope[i] = (curve[i + 1] - curve[i - 1]) / (levels[i + 1] - levels[i - 1]);
  }
  const std::size_t best =
      static_cast<std::size_t>(std::max_element(slope.begin(), slope.end()) - slope.begin());
  if (best <= 1 || best + 2 >= n) return levels[best];
  const double s0 = slope[best - 1], s1 = slope[best], s2 = slope[best + 1];
  const double denom = s0 - 2.0 * s1 + s2;
  const double h = 0.5 * (levels[best + 1] - levels[best - 1]);
  if (denom >= 0.0) return levels[best];
  const double offset = 0.5 * (s0 - s2) / denom;
  return levels[best] + std::clamp(offset, -0.5, 0.5) * h;
}

}  // namespace

GiantTransition estimate_giant_transition(const LinkProbability& prob, double window_side,
                                          std::span<const double> levels, std::size_t replicates,
                                          std::uint64_t seed, unsigned threads) {
  if (levels.size() < 5) throw InvalidInput("need at least 5 levels to locate an inflection");
  if (replicates < 2) throw InvalidInput("replicates must be >= 2");
  std::vector<std::vector<double>> fractions(replicates);
  parallel_for(replicates, resolve_threads(threads), [&](std::size_t r) {
    fractions[r] =
        run_coupled_replicate(prob, window_side, levels.back(), levels, stream_seed(seed, r))
            .largest_fraction;
  });

  GiantTransition out;
  out.levels.assign(levels.begin(), levels.end());
  std::vector<double> mean(levels.size());
  std::vector<double> column(replicates);
  for (std::size_t g = 0; g < levels.size(); ++g) {
    for (std::size_t r = 0; r < replicates; ++r) column[r] = fractions[r][g];
    out.mean_fraction.push_back(mean_estimate(column));
    mean[g] = out.mean_fraction.back().value;
  }
  const double point = steepest_rise(levels, mean);

  constexpr std::size_t kBootstrap = 200;
  Rng boot(mix64(seed ^ 0x626f6f74ULL));
  std::vector<double> resampled_mean(levels.size());
  std::vector<double> estimates;
  estimates.reserve(kBootstrap);
  for (std::size_t b = 0; b < kBootstrap; ++b) {
    std::fill(resampled_mean.begin(), resampled_mean.end(), 0.0);
    for (std::size_t r = 0; r < replicates; ++r) {
      const auto& pick = fractions[static_cast<std::size_t>(boot.uniform() * replicates)];
      for (std::size_t g = 0; g < levels.size(); ++g) resampled_mean[g] += pick[g];
    }
    estimates.push_back(steepest_rise(levels, resampled_mean));
  }
  std::sort(estimates.begin(), estimates.end());
  const double spread = 0.5 * (estimates[static_cast<std::size_t>(0.975 * (kBootstrap - 1))] -
                               estimates[static_cast<std::size_t>(0.025 * (kBootstrap - 1))]);
  double spacing = 0.0;
  for (std::size_t g = 1; g < levels.size(); ++g) spacing = std::max(spacing, levels[g] - levels[g - 1]);
  out.lambda_hat = {point, spread + 0.5 * spacing};
  return out;
}

double LogLinearFit::c1() const { return std::exp(intercept); }

LogLinearFit fit_log_linear(std::span<const DecayPoint> points) {
  double sw = 0, sx = 0, sy = 0;
  std::vector<std::array<double, 3>> rows;  // x, y, w
  for (const auto& pt : points) {
    if (pt.hits == 0 || pt.replicates == 0) continue;
    const double p = pt.p_conn;
    const double w = p >= 1.0 ? static_cast<double>(pt.replicates) * 1e6
                              : static_cast<double>(pt.replicates) * p / (1.0 - p);
    rows.push_back({pt.h, std::log(p), w});
  }
  LogLinearFit fit;
  fit.points_used = rows.size();
  if (rows.size() < 2) return fit;
  for (const auto& [x, y, w] : rows) {
    sw += w;
    sx += w * x;
    sy += w * y;
  }
  const double mx = sx / sw, my = sy / sw;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [x, y, w] : rows) {
    sxx += w * (x - mx) * (x - mx);
    sxy += w * (x - mx) * (y - my);
    syy += w * (y - my) * (y - my);
  }
  if (sxx <= 0.0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0;
  for (const auto& [x, y, w] : rows) {
    const double e = y - (fit.intercept + fit.slope * x);
    sse += w * e * e;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  return fit;
}

DecayProfile connection_decay_profile(double density, const LinkProbability& prob,
                                      std::span<const double> h_values, std::size_t replicates,
                                      std::uint64_t seed, unsigned threads,
                                      std::optional<double> lambda_c_reference) {
  if (replicates < 1) throw InvalidInput("replicates must be >= 1");
  if (!(density >= 0.0)) throw InvalidInput("density must be non-negative");
  for (std::size_t i = 0; i < h_values.size(); ++i) {
    if (h_values[i] < 0.0 || (i > 0 && !(h_values[i] > h_values[i - 1]))) {
      throw InvalidInput("h values must be non-negative and strictly increasing");
    }
  }

  DecayProfile profile;
  if (lambda_c_reference) {
    profile.lambda_c_reference = *lambda_c_reference;
  } else {
    profile.lambda_c_reference =
        estimate_critical_density(prob, 20.0, 100, 0.02, mix64(seed ^ 0x6c63ULL), threads).lambda_hat;
  }
  profile.supercritical_warning = density >= profile.lambda_c_reference;

  const unsigned workers = resolve_threads(threads);
  for (std::size_t hi = 0; hi < h_values.size(); ++hi) {
    const double h = h_values[hi];
    const Region region = Region::centered_square(h + 1.5);
    std::vector<std::uint8_t> hit(replicates, 0);
    parallel_for(replicates, workers, [&](std::size_t r) {
      const std::uint64_t rs = stream_seed(stream_seed(seed, hi), r);
      const GeoGraph graph =
          build_graph(add_origin_node(sample_poisson(region, density, rs), {0.0, 0.0}), 1.0);
      const LinkMask mask = thin_links(graph, prob, mix64(rs));
      std::vector<std::uint8_t> seen(graph.node_count(), 0);
      std::vector<NodeId> stack{0};
      seen[0] = 1;
      while (!stack.empty()) {
        const NodeId v = stack.back();
        stack.pop_back();
        const Point p = graph.position(v);
        if (std::max(std::abs(p.x), std::abs(p.y)) > h) {
          hit[r] = 1;
          return;
        }
        for (LinkId k : graph.incident(v)) {
          if (!mask.active(k)) continue;
          const NodeId w = graph.link(k).other(v);
          if (!seen[w]) {
            seen[w] = 1;
            stack.push_back(w);
          }
        }
      }
    });
    std::size_t hits = 0;
    for (auto x : hit) hits += x;
    const Estimate e = proportion(hits, replicates);
    profile.points.push_back({h, e.value, e.ci, hits, replicates});
  }
  profile.fit = fit_log_linear(profile.points);
  return profile;
}

}  // namespace percfpp
