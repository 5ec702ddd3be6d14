// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: acceptance [criterion-number ...]   (default: all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "../support/oracles.hpp"
#include "percfpp/bond_percolation.hpp"
#include "percfpp/components.hpp"
#include "percfpp/config.hpp"
#include "percfpp/experiment.hpp"
#include "percfpp/fpp.hpp"
#include "percfpp/lattice.hpp"
#include "percfpp/link_dynamics.hpp"
#include "percfpp/rng.hpp"
#include "percfpp/thinning.hpp"

using namespace percfpp;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

unsigned threads() { return std::max(1u, std::thread::hardware_concurrency()); }

GammaEstimate gamma_at(const OnOffSpec& spec, double density, double window, double tau,
                       std::uint64_t seed) {
  RatioCurveOptions o;
  o.density = density;
  o.window_side = window;
  o.tau = tau;
  o.replicates = 30;
  o.pairs_per_band = 30;
  o.seed = seed;
  o.threads = threads();
  return estimate_gamma(delay_ratio_curve(spec, o));
}

std::string show(const GammaEstimate& g) {
  return fmt("%.4f [%.4f, %.4f]", g.gamma_hat, g.ci_lo, g.ci_hi);
}

// Linear regime: positive with positive lower bound, stable across quantiles.
Outcome linear_regime(const GammaEstimate& g) {
  return {g.gamma_hat > 0 && g.ci_lo > 0 && g.converged,
          "gamma " + show(g) + fmt(" half %.4f quarter %.4f converged %d", g.top_half.value,
                                   g.top_quarter.value, static_cast<int>(g.converged))};
}

// Sub-linear regime: below the linear one and shrinking with the window.
Outcome sublinear_regime(const GammaEstimate& g, const GammaEstimate& small, const GammaEstimate& large,
                         const GammaEstimate& linear) {
  const double drop = 1 - large.gamma_hat / small.gamma_hat;
  return {g.ci_hi < linear.ci_lo && drop >= 0.30,
          "gamma " + show(g) + fmt(" vs linear lower %.4f; W40 %.4f -> W80 %.4f (drop %.0f%%)",
                                   linear.ci_lo, small.gamma_hat, large.gamma_hat, 100 * drop)};
}

const OnOffSpec kFig6a = OnOffSpec::exponential(0.5, 2);
const OnOffSpec kFig6b = OnOffSpec::exponential(2.5, 0.5);

Outcome c1() { return linear_regime(gamma_at(kFig6a, 1.75, 60, 0, 101)); }

Outcome c2() {
  const auto linear = gamma_at(kFig6a, 1.75, 60, 0, 101);
  return sublinear_regime(gamma_at(kFig6b, 1.75, 60, 0, 102), gamma_at(kFig6b, 1.75, 40, 0, 103),
                          gamma_at(kFig6b, 1.75, 80, 0, 104), linear);
}

Outcome c3() {
  const OnOffSpec sub({PeriodFamily::exponential, {1, 1.5}}, {PeriodFamily::exponential, {0.5, 0}});
  const OnOffSpec super({PeriodFamily::exponential, {0.5, 0.5}}, {PeriodFamily::exponential, {2, 0}});
  const auto linear = gamma_at(sub, 1.875, 60, 0, 201);
  const auto a = linear_regime(linear);
  const auto b = sublinear_regime(gamma_at(super, 1.875, 60, 0, 202), gamma_at(super, 1.875, 40, 0, 203),
                                  gamma_at(super, 1.875, 80, 0, 204), linear);
  return {a.pass && b.pass, "sub: " + a.detail + " | super: " + b.detail};
}

Outcome c4() {
  const std::vector<double> taus{1, 0.3, 0.1, 0.03};
  RatioCurveOptions o;
  o.density = 1.875;
  o.window_side = 60;
  o.replicates = 30;
  o.pairs_per_band = 30;
  o.seed = 301;
  o.threads = threads();
  const OnOffSpec sub = OnOffSpec::exponential(1, 8);
  const OnOffSpec super = OnOffSpec::exponential(1, 2);
  const auto sub_rows = gamma_tau_study(sub, o, taus);
  const auto super_rows = gamma_tau_study(super, o, taus);
  const auto sub_zero = estimate_gamma(delay_ratio_curve(sub, o));

  const bool floor_ok = sub_rows[0].gamma.gamma_hat >= 1 - sub_rows[0].gamma.ci &&
                        super_rows[0].gamma.gamma_hat >= 1 - super_rows[0].gamma.ci;
  bool monotone = true;
  for (std::size_t i = 1; i < sub_rows.size(); ++i) {
    const auto& prev = sub_rows[i - 1].gamma;
    const auto& cur = sub_rows[i].gamma;
    monotone = monotone && cur.gamma_hat <= prev.gamma_hat + prev.ci + cur.ci;
  }
  const auto& last = sub_rows.back().gamma;
  const bool toward_zero = last.gamma_hat >= sub_zero.gamma_hat - last.ci - sub_zero.ci &&
                           std::abs(last.gamma_hat - sub_zero.gamma_hat) <
                               std::abs(sub_rows[0].gamma.gamma_hat - sub_zero.gamma_hat);
  const double super_small = super_rows.back().gamma.gamma_hat;
  const bool super_ok = super_small < 0.15;

  std::string detail = fmt("tau=1: sub %.3f super %.3f (floor %s); sub", sub_rows[0].gamma.gamma_hat,
                           super_rows[0].gamma.gamma_hat, floor_ok ? "ok" : "violated");
  for (const auto& r : sub_rows) detail += fmt(" %.3f", r.gamma.gamma_hat);
  detail += fmt(" -> tau=0 %.3f (%s); super tau=0.03 %.3f vs < 0.15 (%s)", sub_zero.gamma_hat,
                monotone && toward_zero ? "monotone" : "not monotone", super_small,
                super_ok ? "ok" : "FAILS");
  return {floor_ok && monotone && toward_zero && super_ok, detail};
}

Outcome c5() {
  const auto spec = OnOffSpec::exponential(1, 1);
  Rng rng(501, 0);
  double sum = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += static_cast<double>(sample_propagation_delay(spec, 0.5, 1.0, rng).attempts);
  const double mean = sum / n;
  const double rel = std::abs(mean / std::exp(1.0) - 1);
  return {rel <= 0.02, fmt("E[K] = %.4f vs e = %.5f (%.2f%%)", mean, std::exp(1.0), 100 * rel)};
}

Outcome c6() {
  const std::vector<double> hs{2, 4, 6, 8, 10, 12};
  // Far tails are below 1e-5, so 2000 replicates leave only two non-zero
  // points; the larger budget keeps the fit from being a two-point line.
  const auto prof = connection_decay_profile(0.4, LinkProbability::constant(1), hs, 200000, 601, threads());
  std::string pts;
  for (const auto& p : prof.points) pts += fmt(" %.4g", p.p_conn);
  return {prof.fit.slope < 0 && prof.fit.r_squared > 0.9 && prof.fit.points_used >= 3,
          fmt("slope %.4f R^2 %.4f points %zu; p:", prof.fit.slope, prof.fit.r_squared, prof.fit.points_used) + pts};
}

Outcome c7() {
  bool all = true;
  std::string detail;
  std::uint64_t seed = 701;
  for (double density : {1.0, 1.75, 3.0}) {
    const auto cmp = compare_snapshot_with_thinning(kFig6a, density, 40, 100, seed++, threads());
    all = all && cmp.agree();
    detail += fmt("lambda %.2f: %.4f+-%.4f vs %.4f+-%.4f; ", density, cmp.snapshot_largest_fraction.value,
                  cmp.snapshot_largest_fraction.ci, cmp.thinning_largest_fraction.value,
                  cmp.thinning_largest_fraction.ci);
  }
  return {all, detail};
}

Outcome c8() {
  const auto full = estimate_critical_density_two_windows(LinkProbability::constant(1), 40, 400, 0.005, 801, threads());
  const auto half = estimate_critical_density_two_windows(LinkProbability::constant(0.5), 40, 400, 0.005, 802, threads());
  const bool ordered = half.lambda_hat - half.ci > full.lambda_hat + full.ci;

  bool subset = true;
  for (std::uint64_t r = 0; r < 100; ++r) {
    const auto cloud = coupled_cloud(30, 3.0, stream_seed(803, r));
    const auto g = build_graph(cloud, 1.0);
    const auto lo = coupled_thinning(g, LinkProbability::constant(0.5), stream_seed(803, r));
    const auto hi = coupled_thinning(g, LinkProbability::constant(1), stream_seed(803, r));
    const auto a = thin_links(g, LinkProbability::affine(0.5, -0.3), r);
    const auto b = thin_links(g, LinkProbability::constant(0.5), r);
    subset = subset && lo.is_subset_of(hi) && a.is_subset_of(b);
  }
  return {ordered && subset, fmt("lambda_c(0.5) %.4f+-%.4f vs lambda_c(1) %.4f+-%.4f; subset %s",
                                 half.lambda_hat, half.ci, full.lambda_hat, full.ci,
                                 subset ? "exact on 100 replicates" : "VIOLATED")};
}

Outcome c9() {
  const auto crossing = estimate_critical_density_two_windows(LinkProbability::constant(1), 40, 400, 0.005, 901, threads());
  std::vector<double> levels;
  for (double l = 1.0; l <= 2.2 + 1e-9; l += 0.025) levels.push_back(l);
  const auto giant = estimate_giant_transition(LinkProbability::constant(1), 80, levels, 40, 902, threads());
  const double gap = std::abs(crossing.lambda_hat - giant.lambda_hat.value);
  return {gap <= 0.1, fmt("crossing %.4f+-%.4f, giant inflection %.4f+-%.4f, gap %.4f", crossing.lambda_hat,
                          crossing.ci, giant.lambda_hat.value, giant.lambda_hat.ci, gap)};
}

Outcome c10() {
  bool ok = true;
  std::string detail;
  for (int m = 2; m <= 6; ++m) {
    const auto c = enumerate_surrounding_circuits(m);
    ok = ok && static_cast<double>(c.count) <= c.bound;
    detail += fmt("m=%d %llu<=%.0f; ", m, static_cast<unsigned long long>(c.count), c.bound);
  }
  ok = ok && enumerate_surrounding_circuits(2).count == 1 && enumerate_surrounding_circuits(3).count == 4;
  std::size_t odd = 0;
  for (int len = 1; len <= 13; len += 2) odd += surrounding_circuits(len).size();
  ok = ok && odd == 0;
  return {ok, detail + fmt("odd-length circuits %zu", odd)};
}

Outcome c11() {
  bool graphs = true, labels = true, paths = true;
  std::size_t checked = 0;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto cloud = sample_poisson(Region::square(25), 2.9, 1100 + s);  // ~1800 nodes
    if (cloud.size() > 2000) continue;
    ++checked;
    const auto g = build_graph(cloud, 1.0);
    graphs = graphs && oracle::link_set(g) == oracle::all_pairs_links(cloud.points(), 1.0);
    const auto mask = thin_links(g, LinkProbability::constant(0.4), s);
    labels = labels && oracle::same_partition(label_components(g, mask).labels, oracle::bfs_labels(g, &mask));
  }
  for (std::uint64_t s = 0; s < 3; ++s) {
    const auto g = build_graph(sample_poisson(Region::square(16), 1.8, 1200 + s), 1.0);
    const auto f = sample_delay_field(g, OnOffSpec::exponential(1, 1), 0.25 * s, s);
    const auto tree = shortest_path_tree(g, f, 0);
    const auto ref = oracle::bellman_ford(g, f, 0);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      paths = paths && (std::isinf(ref[v]) ? tree.delay[v] == kUnreached
                                           : std::abs(tree.delay[v] - ref[v]) <= 1e-9 * (1 + ref[v]));
    }
  }
  const auto spec = OnOffSpec::exponential(0.5, 2);
  Rng rng(1300, 0);
  std::vector<double> xs;
  for (int i = 0; i < 100000; ++i) xs.push_back(sample_fpp_delay(spec, 0.7, rng).value);
  const double ks = oracle::ks_distance(xs, [](double t) { return t < 0 ? 0.0 : 1 - 0.8 * std::exp(-t / 2); });
  return {graphs && labels && paths && ks <= 0.01 && checked >= 4,
          fmt("%zu graphs; grid=all-pairs %s, union-find=BFS %s, Dijkstra=Bellman-Ford %s, KS %.5f", checked, graphs ? "yes" : "NO",
              labels ? "yes" : "NO", paths ? "yes" : "NO", ks)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome c12() {
  const std::vector<std::pair<std::string, std::string>> configs{
      {"circuits", "[experiment]\nkind = circuits\n[model]\nm_max = 5\n"},
      {"sweep", "[experiment]\nkind = sweep_critical\nreplicates = 40\n[model]\nwindow_side = 40\n"
                "lambdas = 1, 1.4, 1.8\n[link_prob]\nkind = constant\np = 1\n"},
      {"decay", "[experiment]\nkind = decay\nreplicates = 200\n[model]\ndensity = 0.6\nh_values = 1, 2, 3\n"
                "[link_prob]\nkind = affine\na = 1\nb = -0.3\n"},
      {"ratio", "[experiment]\nkind = ratio_curve\nreplicates = 4\n[model]\ndensity = 1.75\nwindow_side = 30\n"
                "pairs_per_band = 8\ntau = 0.1\n[spec]\nactive_mean = 1\ninactive_mean = 2\n"},
      {"gamma_tau", "[experiment]\nkind = gamma_tau\nreplicates = 3\n[model]\ndensity = 1.75\nwindow_side = 30\n"
                    "pairs_per_band = 6\ntau = 1, 0.1\ninclude_tau_zero = true\n[spec]\ninactive_mean = 2\n"},
      {"snapshot", "[experiment]\nkind = snapshot_equiv\nreplicates = 6\n[model]\nwindow_side = 20\n"
                   "densities = 1, 2\n[spec]\nactive_mean = 0.5\ninactive_mean = 2\n"},
  };
  const auto root = fs::temp_directory_path() / "percfpp_acceptance_determinism";
  fs::remove_all(root);
  std::size_t compared = 0;
  std::string mismatch;
  for (const auto& [name, text] : configs) {
    auto parsed = validate_config(text);
    if (auto* errs = std::get_if<std::vector<ConfigError>>(&parsed)) {
      return {false, name + ": " + format_errors(*errs)};
    }
    auto cfg = std::get<ExperimentConfig>(parsed);
    std::vector<fs::path> dirs;
    for (unsigned t : {1u, 1u, 4u}) {
      cfg.threads = t;
      cfg.output_dir = (root / (name + "_" + std::to_string(dirs.size()))).string();
      run_experiment(cfg);
      dirs.emplace_back(cfg.output_dir);
    }
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      if (entry.path().extension() != ".csv") continue;
      const auto ref = slurp(entry.path());
      for (std::size_t i = 1; i < dirs.size(); ++i) {
        if (slurp(dirs[i] / entry.path().filename()) != ref) mismatch += entry.path().filename().string() + " ";
      }
      ++compared;
    }
  }
  return {mismatch.empty() && compared >= configs.size(),
          fmt("%zu CSVs compared across reruns and 1/1/4 threads", compared) +
              (mismatch.empty() ? "" : "; differing: " + mismatch)};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"subcritical linear scaling", c1},
      {"supercritical sub-linear scaling", c2},
      {"distance-dependent periods", c3},
      {"propagation-delay floor and limits", c4},
      {"retransmission count", c5},
      {"exponential decay of connection", c6},
      {"snapshot equivalence", c7},
      {"monotonicity in link retention", c8},
      {"phase-indicator agreement", c9},
      {"circuit bound", c10},
      {"oracle suites", c11},
      {"determinism", c12},
  };
  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    const int k = std::atoi(argv[i]);
    if (k < 1 || k > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion '%s'\n", argv[i]);
      return 2;
    }
    selected.push_back(static_cast<std::size_t>(k - 1));
  }
  if (selected.empty()) {
    for (std::size_t i = 0; i < criteria.size(); ++i) selected.push_back(i);
  }

  int failures = 0;
  for (std::size_t i : selected) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  %2zu %s (%.1fs): %s\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, secs,
                out.detail.c_str());
    std::fflush(stdout);
    failures += out.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
