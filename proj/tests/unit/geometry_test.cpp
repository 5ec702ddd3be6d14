#include <gtest/gtest.h>

#include <cmath>

#include "percfpp/errors.hpp"
#include "percfpp/geometry.hpp"
#include "percfpp/rng.hpp"

using namespace percfpp;

TEST(Region, RejectsDegenerateBounds) {
  EXPECT_THROW(Region(0, 0, 0, 1), InvalidInput);
  EXPECT_THROW(Region(0, 2, 1, 1), InvalidInput);
  EXPECT_DOUBLE_EQ(Region(0, 0, 2, 3).area(), 6.0);
}

TEST(SamplePoisson, ZeroDensityGivesEmptyCloud) {
  const auto cloud = sample_poisson(Region::square(50), 0.0, 7);
  EXPECT_TRUE(cloud.empty());
}

TEST(SamplePoisson, NegativeDensityIsRejected) {
  EXPECT_THROW(sample_poisson(Region::square(10), -0.1, 1), InvalidInput);
}

TEST(SamplePoisson, DeterministicPerSeed) {
  const Region r(0, 0, 30, 20);
  const auto a = sample_poisson(r, 1.75, 99);
  const auto b = sample_poisson(r, 1.75, 99);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
  EXPECT_NE(sample_poisson(r, 1.75, 100).points(), a.points());
}

TEST(SamplePoisson, PointsInsideRegion) {
  const Region r(-3, 2, 7, 5);
  for (const auto& p : sample_poisson(r, 4.0, 3).points()) EXPECT_TRUE(r.contains(p));
}

// Replicate mean of Poisson(lambda * area) counts lies within 3 sqrt(lambda area / R).
TEST(SamplePoisson, CountMeanMatchesIntensity) {
  const Region r = Region::square(100);
  constexpr std::size_t kReps = 200;
  double sum = 0;
  for (std::size_t i = 0; i < kReps; ++i) sum += sample_poisson(r, 1.75, stream_seed(11, i)).size();
  const double mean = sum / kReps;
  EXPECT_NEAR(mean, 17500.0, 3.0 * std::sqrt(17500.0 / kReps));
}

// Chi-square on quadrant counts, 3 degrees of freedom, 0.1% critical value 16.266.
TEST(SamplePoisson, QuadrantCountsAreHomogeneous) {
  const Region r = Region::square(40);
  double counts[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < 100; ++i) {
    for (const auto& p : sample_poisson(r, 1.75, stream_seed(5, i)).points()) {
      counts[(p.x >= 20 ? 1 : 0) + (p.y >= 20 ? 2 : 0)] += 1;
    }
  }
  const double expected = (counts[0] + counts[1] + counts[2] + counts[3]) / 4.0;
  double chi2 = 0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 16.266);
}

TEST(AddOriginNode, PrependsWithoutMutating) {
  const auto empty = sample_poisson(Region::centered_square(5), 0.0, 1);
  const auto one = add_origin_node(empty, {0, 0});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], (Point{0, 0}));

  const auto cloud = sample_poisson(Region::centered_square(5), 1.0, 2);
  const auto more = add_origin_node(cloud, {1.5, -2});
  ASSERT_EQ(more.size(), cloud.size() + 1);
  EXPECT_EQ(more[0], (Point{1.5, -2}));
  for (std::size_t i = 0; i < cloud.size(); ++i) EXPECT_EQ(more[i + 1], cloud[i]);
}

TEST(AddOriginNode, RejectsOutsidePosition) {
  const auto cloud = sample_poisson(Region::centered_square(5), 1.0, 2);
  EXPECT_THROW(add_origin_node(cloud, {6, 0}), InvalidInput);
}

TEST(Rng, StreamsAreDistinctAndReproducible) {
  Rng a(1, 0), b(1, 1), c(1, 0);
  EXPECT_NE(a(), b());
  Rng d(1, 0);
  EXPECT_EQ(c(), d());
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform_open();
    EXPECT_GT(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}
