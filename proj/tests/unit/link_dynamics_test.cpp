#include <gtest/gtest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "percfpp/errors.hpp"
#include "percfpp/link_dynamics.hpp"
#include "percfpp/stats.hpp"

using namespace percfpp;

namespace {
Estimate mean_of(const std::vector<double>& xs) { return mean_estimate(xs); }

// Exact mean of the propagation delay for exponential laws, by first-step analysis.
double propagation_mean_exact(double mz, double my, double tau) {
  const double q = std::exp(-tau / mz);
  const double short_active = mz * (1 - q) - tau * q;  // E[Z; Z < tau]
  const double from_inactive = (my + short_active) / q;
  const double eta1 = mz / (mz + my);
  return tau + eta1 * (short_active + (1 - q) * from_inactive) + (1 - eta1) * from_inactive;
}
}  // namespace

TEST(ActiveRatio, MatchesMeans) {
  EXPECT_NEAR(stationary_active_ratio(OnOffSpec::exponential(1, 4), 0.5), 0.2, 1e-15);
  EXPECT_NEAR(stationary_active_ratio(OnOffSpec::exponential(2, 2), 0.3), 0.5, 1e-15);
  const OnOffSpec lin({PeriodFamily::exponential, {1, 4}}, {PeriodFamily::exponential, {1, 0}});
  EXPECT_NEAR(stationary_active_ratio(lin, 1.0), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(stationary_inactive_ratio(lin, 1.0), 5.0 / 6.0, 1e-15);
}

TEST(ActiveRatio, LinkLengthOutsideUnitIntervalIsRejected) {
  const auto spec = OnOffSpec::exponential(1, 1);
  EXPECT_THROW(stationary_active_ratio(spec, 0.0), InvalidInput);
  EXPECT_THROW(stationary_active_ratio(spec, 1.5), InvalidInput);
}

TEST(OnOffSpec, RejectsNonPositiveMeans) {
  EXPECT_THROW(OnOffSpec::exponential(0, 1), InvalidInput);
  EXPECT_THROW(OnOffSpec({PeriodFamily::uniform, {1, -2}}, {PeriodFamily::uniform, {1, 0}}), InvalidInput);
  EXPECT_EQ(parse_period_family(to_string(PeriodFamily::deterministic)), PeriodFamily::deterministic);
  EXPECT_THROW(parse_period_family("gamma"), InvalidInput);
}

TEST(Snapshot, IdenticalToThinningWithActiveRatio) {
  const auto g = build_graph(sample_poisson(Region::square(60), 1.75, 3), 1.0);
  const OnOffSpec spec({PeriodFamily::exponential, {1, 3}}, {PeriodFamily::exponential, {1, 0}});
  const auto snap = sample_snapshot(g, spec, 44);
  const auto thin = thin_links(g, active_ratio_probability(spec), 44);
  EXPECT_EQ(snap.bits(), thin.bits());
  EXPECT_EQ(snap.provenance(), MaskProvenance::snapshot);
}

TEST(Snapshot, ActiveFractionMatchesRatio) {
  const auto g = build_graph(sample_poisson(Region::square(60), 1.75, 3), 1.0);
  ASSERT_GE(g.link_count(), 10000u);
  const double f = sample_snapshot(g, OnOffSpec::exponential(1, 4), 9).active_fraction();
  EXPECT_NEAR(f, 0.2, 3 * std::sqrt(0.16 / g.link_count()));
  EXPECT_EQ(sample_snapshot(g, OnOffSpec::exponential(1e-9, 1e9), 9).active_count(), 0u);
}

TEST(Snapshot, ComparisonWithThinningAgrees) {
  const auto cmp = compare_snapshot_with_thinning(OnOffSpec::exponential(1, 0.5), 2.5, 20, 20, 3, 4);
  EXPECT_TRUE(cmp.agree());
  EXPECT_NEAR(cmp.snapshot_active_fraction.value, 2.0 / 3.0, 0.02);
}

TEST(FppDelay, ExponentialMeanAndSurvival) {
  const auto spec = OnOffSpec::exponential(0.5, 2);  // eta_0 = 0.8
  Rng rng(7, 0);
  std::vector<double> xs;
  std::size_t zeros = 0;
  for (int i = 0; i < 100000; ++i) {
    const auto s = sample_fpp_delay(spec, 0.5, rng);
    EXPECT_EQ(s.zero_flag, s.value == 0.0);
    zeros += s.zero_flag;
    xs.push_back(s.value);
  }
  const auto m = mean_of(xs);
  EXPECT_NEAR(m.value, 1.6, 0.02 * 1.6);
  EXPECT_NEAR(static_cast<double>(zeros) / xs.size(), 0.2, 0.005);
  for (double t : {1.0, 2.0, 4.0}) {
    std::size_t above = 0;
    for (double x : xs) above += x > t;
    const double expect = 0.8 * std::exp(-t / 2);
    EXPECT_NEAR(static_cast<double>(above) / xs.size(), expect,
                4 * std::sqrt(expect * (1 - expect) / xs.size()));
  }
  EXPECT_LT(oracle::ks_distance(xs, [](double t) { return t < 0 ? 0.0 : 1 - 0.8 * std::exp(-t / 2); }), 0.01);
}

TEST(FppDelay, AlwaysActiveLimitIsZero) {
  const auto spec = OnOffSpec::exponential(1e9, 1e-9);
  Rng rng(1, 0);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(sample_fpp_delay(spec, 0.3, rng).value, 1e-6);
}

// Residual laws of the non-exponential families against their closed forms.
TEST(FppDelay, ResidualLawsOfOtherFamilies) {
  for (auto fam : {PeriodFamily::deterministic, PeriodFamily::uniform}) {
    const PeriodLaw y{fam, {3, 0}};
    const OnOffSpec spec(y, {PeriodFamily::exponential, {1, 0}});
    Rng rng(3, static_cast<std::uint64_t>(fam));
    std::vector<double> xs;
    for (int i = 0; i < 50000; ++i) xs.push_back(sample_fpp_delay(spec, 0.5, rng).value);
    auto cdf = [&](double t) {
      if (t < 0) return 0.0;
      return 1 - 0.75 * y.residual_survival(t, 0.5);
    };
    EXPECT_LT(oracle::ks_distance(xs, cdf), 0.012) << to_string(fam);
    // Residual survival from the definition: integral of (1 - F) over [t, inf) / mean.
    for (double t : {0.5, 1.5, 2.5}) {
      double integral = 0;
      const int steps = 20000;
      const double hi = 6.5;
      for (int k = 0; k < steps; ++k) {
        const double s = t + (hi - t) * (k + 0.5) / steps;
        integral += (1 - y.cdf(s, 0.5)) * (hi - t) / steps;
      }
      EXPECT_NEAR(y.residual_survival(t, 0.5), integral / 3, 1e-4) << to_string(fam) << " " << t;
    }
  }
}

TEST(Propagation, ExpectedAttemptsIsE) {
  const auto spec = OnOffSpec::exponential(1, 1);
  Rng rng(2, 0);
  double sum = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) sum += sample_propagation_delay(spec, 0.5, 1.0, rng).attempts;
  EXPECT_NEAR(sum / n, std::exp(1.0), 0.02 * std::exp(1.0));
}

TEST(Propagation, MeanMatchesFirstStepAnalysis) {
  for (double tau : {0.25, 1.0, 2.0}) {
    const auto spec = OnOffSpec::exponential(1.5, 0.7);
    Rng rng(8, static_cast<std::uint64_t>(tau * 100));
    std::vector<double> xs;
    for (int i = 0; i < 100000; ++i) {
      const auto s = sample_propagation_delay(spec, 0.5, tau, rng);
      ASSERT_GE(s.delay.value, tau);
      ASSERT_GE(s.attempts, 1u);
      xs.push_back(s.delay.value);
    }
    const auto m = mean_of(xs);
    EXPECT_NEAR(m.value, propagation_mean_exact(1.5, 0.7, tau), 4 * m.ci / kZ95) << tau;
  }
}

TEST(Propagation, LongDeterministicActivePeriodDeliversInTau) {
  const OnOffSpec spec({PeriodFamily::exponential, {1e-9, 0}}, {PeriodFamily::deterministic, {2, 0}});
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto p = sample_propagation_delay(spec, 0.4, 1.0, s);
    if (p.delay.zero_flag) {
      EXPECT_EQ(p.delay.value, 1.0);
      EXPECT_EQ(p.attempts, 1u);
    }
  }
}

TEST(Propagation, NonPositiveTauIsRejected) {
  EXPECT_THROW(sample_propagation_delay(OnOffSpec::exponential(1, 1), 0.5, 0.0, 1), InvalidInput);
}

TEST(Trajectory, TimeAverageMatchesActiveRatio) {
  const auto spec = OnOffSpec::exponential(1, 4);
  double sum = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto traj = simulate_trajectory(spec, 0.5, 1e4, s);
    sum += active_time_fraction(traj, 1e4);
  }
  EXPECT_NEAR(sum / 20, 0.2, 0.02 * 0.2);
}

TEST(Trajectory, PeriodsAlternateAndCoverHorizon) {
  const OnOffSpec spec({PeriodFamily::uniform, {2, 0}}, {PeriodFamily::deterministic, {1, 0.5}});
  const auto traj = simulate_trajectory(spec, 0.8, 500, 12);
  ASSERT_FALSE(traj.empty());
  double total = 0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    EXPECT_GT(traj[i].duration, 0.0);
    if (i > 0) EXPECT_NE(traj[i].state, traj[i - 1].state);
    total += traj[i].duration;
  }
  EXPECT_GE(total, 500.0);
  EXPECT_LT(total - traj.back().duration, 500.0);
}
