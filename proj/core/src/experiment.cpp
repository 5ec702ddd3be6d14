#include "percfpp/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "percfpp/bond_percolation.hpp"
#include "percfpp/csv.hpp"
#include "percfpp/fpp.hpp"
#include "percfpp/lattice.hpp"
#include "percfpp/link_dynamics.hpp"
#include "percfpp/svg.hpp"

#ifndef PERCFPP_VERSION
#define PERCFPP_VERSION "0.0.0"
#endif

namespace percfpp {

std::string toolkit_version() { return PERCFPP_VERSION; }

void ResultsSummary::add(std::string key, std::string value) {
  entries.emplace_back(std::move(key), std::move(value));
}
void ResultsSummary::add(std::string key, double value) { add(std::move(key), format_number(value)); }
void ResultsSummary::add(std::string key, bool value) {
  add(std::move(key), std::string(value ? "true" : "false"));
}

const std::string* ResultsSummary::find(const std::string& key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return &v;
  }
  return nullptr;
}

namespace {

namespace fs = std::filesystem;

void add_gamma(ResultsSummary& s, const std::string& prefix, const GammaEstimate& g) {
  s.add(prefix + "gamma_hat", g.gamma_hat);
  s.add(prefix + "ci", g.ci);
  s.add(prefix + "ci_lo", g.ci_lo);
  s.add(prefix + "ci_hi", g.ci_hi);
  s.add(prefix + "top_half", g.top_half.value);
  s.add(prefix + "top_half_ci", g.top_half.ci);
  s.add(prefix + "top_quarter", g.top_quarter.value);
  s.add(prefix + "top_quarter_ci", g.top_quarter.ci);
  s.add(prefix + "converged_flag", g.converged);
}

RatioCurveOptions ratio_options(const ExperimentConfig& c, unsigned threads) {
  RatioCurveOptions o;
  o.density = *c.density;
  o.window_side = *c.window_side;
  o.tau = c.tau.empty() ? 0.0 : c.tau.front();
  o.pairs_per_band = *c.pairs_per_band;
  o.replicates = c.replicates;
  o.bands = c.bands;
  o.sources_per_replicate = c.sources_per_replicate;
  o.seed = c.master_seed;
  o.threads = threads;
  return o;
}

void run_circuits(const ExperimentConfig& c, const fs::path& dir, ResultsSummary& s) {
  CsvWriter csv(dir / "circuits.csv", {"m", "count", "bound", "ratio"});
  bool ok = true;
  for (int m = kMinCircuitHalfLength; m <= *c.m_max; ++m) {
    const CircuitCount cc = enumerate_surrounding_circuits(m);
    csv.row(cc.m, cc.count, cc.bound, cc.ratio());
    s.add("circuits.m" + std::to_string(m) + ".count", std::to_string(cc.count));
    ok = ok && static_cast<double>(cc.count) <= cc.bound;
  }
  s.add("circuits.all_within_bound", ok);
}

void run_sweep(const ExperimentConfig& c, const fs::path& dir, unsigned threads, ResultsSummary& s) {
  const LinkProbability prob = c.link_prob->build();
  const auto est = estimate_critical_density_two_windows(prob, *c.window_side, c.replicates,
                                                         c.tolerance, c.master_seed, threads);
  std::vector<SweepPoint> rows;
  if (!c.lambdas.empty()) {
    rows = crossing_sweep(prob, *c.window_side, c.lambdas, c.replicates, c.master_seed, threads);
  } else {
    rows = est.probes;
    std::sort(rows.begin(), rows.end(),
              [](const SweepPoint& a, const SweepPoint& b) { return a.lambda < b.lambda; });
  }
  CsvWriter csv(dir / "sweep.csv", {"lambda", "p_cross", "ci"});
  for (const auto& r : rows) csv.row(r.lambda, r.p_cross, r.ci);
  s.add("link_prob", prob.describe());
  s.add("lambda_hat", est.lambda_hat);
  s.add("lambda_ci", est.ci);
  s.add("monte_carlo_ci", est.monte_carlo_ci);
  s.add("bracket_halfwidth", est.bracket_halfwidth);
  s.add("finite_size_drift", est.finite_size_drift);
}

void run_decay(const ExperimentConfig& c, const fs::path& dir, unsigned threads, ResultsSummary& s) {
  const LinkProbability prob = c.link_prob->build();
  const DecayProfile profile = connection_decay_profile(*c.density, prob, c.h_values, c.replicates,
                                                        c.master_seed, threads);
  CsvWriter csv(dir / "decay.csv",
                {"fitted_c1 = " + format_number(profile.fit.c1()),
                 "fitted_c2 = " + format_number(profile.fit.c2())},
                {"h", "p_conn", "ci"});
  for (const auto& p : profile.points) csv.row(p.h, p.p_conn, p.ci);
  s.add("fitted_c1", profile.fit.c1());
  s.add("fitted_c2", profile.fit.c2());
  s.add("fit_slope", profile.fit.slope);
  s.add("fit_r_squared", profile.fit.r_squared);
  s.add("lambda_c_reference", profile.lambda_c_reference);
  s.add("supercritical_warning", profile.supercritical_warning);
}

void run_ratio_curve(const ExperimentConfig& c, const fs::path& dir, unsigned threads,
                     ResultsSummary& s) {
  const OnOffSpec spec = c.spec->build();
  const RatioCurve curve = delay_ratio_curve(spec, ratio_options(c, threads));
  CsvWriter csv(dir / "ratio_curve.csv",
                {"replicate", "source", "target", "distance", "delay", "ratio"});
  std::vector<ScatterPoint> pts;
  for (const auto& r : curve.rows) {
    csv.row(r.replicate, r.source, r.target, r.distance, r.delay, r.ratio);
    pts.push_back({r.distance, r.ratio});
  }
  s.add("replicates_used", std::to_string(curve.replicates_used));
  s.add("replicates_discarded", std::to_string(curve.replicates_discarded));
  if (curve.replicates_discarded > 0) {
    s.add("warning", std::to_string(curve.replicates_discarded) +
                         " replicate(s) discarded: largest component below 10% of nodes");
  }
  if (curve.rows.empty()) {
    s.add("gamma_hat", std::string("nan"));
    return;
  }
  const GammaEstimate g = estimate_gamma(curve, c.top_fraction);
  add_gamma(s, "", g);
  write_scatter_svg(dir / "ratio_curve.svg", pts, g.gamma_hat, "T(u,v)/d(u,v)", "d(u,v)",
                    "delay / distance");
}

void run_gamma_tau(const ExperimentConfig& c, const fs::path& dir, unsigned threads,
                   ResultsSummary& s) {
  const OnOffSpec spec = c.spec->build();
  auto options = ratio_options(c, threads);
  auto rows = gamma_tau_study(spec, options, c.tau, c.top_fraction);
  if (c.include_tau_zero) {
    options.tau = 0.0;
    rows.push_back({0.0, estimate_gamma(delay_ratio_curve(spec, options), c.top_fraction)});
  }
  CsvWriter csv(dir / "gamma_tau.csv", {"tau", "gamma_hat", "ci_lo", "ci_hi", "converged_flag"});
  for (const auto& r : rows) {
    csv.row(r.tau, r.gamma.gamma_hat, r.gamma.ci_lo, r.gamma.ci_hi, r.gamma.converged);
    add_gamma(s, "tau_" + format_number(r.tau) + ".", r.gamma);
  }
}

void run_snapshot_equiv(const ExperimentConfig& c, const fs::path& dir, unsigned threads,
                        ResultsSummary& s) {
  const OnOffSpec spec = c.spec->build();
  std::vector<double> densities = c.densities;
  if (densities.empty()) densities.push_back(*c.density);
  CsvWriter csv(dir / "snapshot_equiv.csv",
                {"density", "method", "largest_fraction", "largest_ci", "active_fraction", "active_ci"});
  bool all = true;
  for (std::size_t i = 0; i < densities.size(); ++i) {
    const auto cmp = compare_snapshot_with_thinning(spec, densities[i], *c.window_side, c.replicates,
                                                    stream_seed(c.master_seed, i), threads);
    csv.row(cmp.density, "snapshot", cmp.snapshot_largest_fraction.value,
            cmp.snapshot_largest_fraction.ci, cmp.snapshot_active_fraction.value,
            cmp.snapshot_active_fraction.ci);
    csv.row(cmp.density, "thinning", cmp.thinning_largest_fraction.value,
            cmp.thinning_largest_fraction.ci, cmp.thinning_active_fraction.value,
            cmp.thinning_active_fraction.ci);
    s.add("density_" + format_number(cmp.density) + ".agree", cmp.agree());
    all = all && cmp.agree();
  }
  s.add("all_agree", all);
}

}  // namespace

ResultsSummary run_experiment(const ExperimentConfig& c) {
  const auto start = std::chrono::steady_clock::now();
  const fs::path dir(c.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw std::runtime_error("output directory '" + dir.string() + "' is not writable: " + ec.message());
  }
  const unsigned threads = c.threads;

  ResultsSummary s;
  s.add("experiment", to_string(c.experiment));
  s.add("toolkit_version", toolkit_version());
  s.add("master_seed", std::to_string(c.master_seed));
  switch (c.experiment) {
    case ExperimentKind::circuits:
      run_circuits(c, dir, s);
      break;
    case ExperimentKind::sweep_critical:
      run_sweep(c, dir, threads, s);
      break;
    case ExperimentKind::decay:
      run_decay(c, dir, threads, s);
      break;
    case ExperimentKind::ratio_curve:
      run_ratio_curve(c, dir, threads, s);
      break;
    case ExperimentKind::gamma_tau:
      run_gamma_tau(c, dir, threads, s);
      break;
    case ExperimentKind::snapshot_equiv:
      run_snapshot_equiv(c, dir, threads, s);
      break;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  s.add("wall_clock_seconds", seconds);

  std::ofstream out(dir / "summary.txt", std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write summary in '" + dir.string() + "'");
  out << "# perc-fpp results summary\n";
  for (const auto& [k, v] : s.entries) out << k << " = " << v << '\n';
  out << "\n# config echo\n";
  std::istringstream cfg(serialize_config(c));
  std::string line, section;
  while (std::getline(cfg, line)) {
    if (line.empty()) continue;
    if (line.front() == '[') {
      section = line.substr(1, line.size() - 2);
      continue;
    }
    out << "config." << section << "." << line << '\n';
  }
  if (!out) throw std::runtime_error("failed writing summary in '" + dir.string() + "'");
  return s;
}

std::vector<std::pair<std::string, std::string>> read_summary(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) continue;
    out.emplace_back(line.substr(0, eq), line.substr(eq + 3));
  }
  return out;
}

}  // namespace percfpp
