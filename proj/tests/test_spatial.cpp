#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "d2dcache/spatial.hpp"

namespace d2dcache {
namespace {

std::vector<std::size_t> brute_force(const Deployment& d, Point q, double radius, Population which) {
  std::vector<std::size_t> out;
  const auto pts = d.points(which);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double dx = std::abs(pts[i].x - q.x), dy = std::abs(pts[i].y - q.y);
    if (d.mode() == RegionMode::Torus) {
      const double side = std::sqrt(std::numbers::pi) * d.cell_radius();
      dx = std::min(dx, side - dx);
      dy = std::min(dy, side - dy);
    }
    if (std::sqrt(dx * dx + dy * dy) <= radius) out.push_back(i);
  }
  return out;
}

// Binomial(n, p) pmf via log-gamma; independent of the library's Poisson code.
double binomial_pmf(int k, int n, double p) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * std::log(p) +
                  (n - k) * std::log1p(-p));
}

double poisson_pmf_direct(int k, double lambda) {
  return std::exp(k * std::log(lambda) - lambda - std::lgamma(k + 1.0));
}

TEST(NetworkParams, IntensityExamples) {
  NetworkParams p;
  EXPECT_DOUBLE_EQ(head_intensity(p), 6.25);
  EXPECT_DOUBLE_EQ(member_intensity(p), 15.625);
  p.heads = 0;
  p.members = 0;
  EXPECT_EQ(head_intensity(p), 0.0);
  EXPECT_EQ(member_intensity(p), 0.0);
  NetworkParams full;
  full.cluster_radius = full.cell_radius;
  EXPECT_DOUBLE_EQ(head_intensity(full), 100.0);
  EXPECT_DOUBLE_EQ(member_intensity(full), 250.0);
}

TEST(NetworkParams, ValidateRejectsBadGeometry) {
  NetworkParams p;
  p.cluster_radius = 250.0;
  EXPECT_THROW(p.validate(), std::domain_error);
  p = {};
  p.cache_capacity = 0;
  EXPECT_THROW(p.validate(), std::domain_error);
  p = {};
  p.energy_ratio = -1.0;
  EXPECT_THROW(p.validate(), std::domain_error);
  p = {};
  p.cell_radius = 0.0;
  EXPECT_THROW(p.validate(), std::domain_error);
}

TEST(Deployment, EmptyDeployment) {
  NetworkParams p;
  p.heads = 0;
  p.members = 0;
  RandomStream rng(1);
  const Deployment d = sample_deployment(p, RegionMode::Torus, rng);
  EXPECT_TRUE(d.heads().empty());
  EXPECT_TRUE(d.members().empty());
  EXPECT_TRUE(d.neighbors_within({10, 10}, 50, Population::Heads).empty());
}

TEST(Deployment, SingleHeadAtQueryPoint) {
  for (const auto mode : {RegionMode::Torus, RegionMode::Disk}) {
    const Deployment d(mode, 200.0, {{30.0, 40.0}}, {}, 50.0);
    const auto hits = d.neighbors_within({30.0, 40.0}, 1e-9, Population::Heads);
    ASSERT_EQ(hits.size(), 1U);
    EXPECT_EQ(hits[0], 0U);
  }
}

TEST(Deployment, RejectsPointsOutsideRegion) {
  EXPECT_THROW(Deployment(RegionMode::Disk, 200.0, {{199.0, 199.0}}, {}, 50.0), std::domain_error);
  EXPECT_THROW(Deployment(RegionMode::Torus, 200.0, {{-1.0, 0.0}}, {}, 50.0), std::domain_error);
  EXPECT_THROW(Deployment(RegionMode::Torus, 200.0, {}, {}, 50.0).neighbors_within({0, 0}, 0.0, Population::Heads),
               std::domain_error);
}

TEST(Deployment, TorusDistanceWrapsAround) {
  const Deployment d(RegionMode::Torus, 200.0, {{1.0, 1.0}}, {}, 50.0);
  const double side = d.torus_side();
  EXPECT_NEAR(d.distance({1.0, 1.0}, {side - 1.0, 1.0}), 2.0, 1e-9);
  const auto hits = d.neighbors_within({side - 1.0, side - 1.0}, 3.0, Population::Heads);
  ASSERT_EQ(hits.size(), 1U);
}

TEST(Deployment, PointsStayInRegionWithConfiguredCounts) {
  NetworkParams p;
  for (const auto mode : {RegionMode::Torus, RegionMode::Disk}) {
    RandomStream rng(3);
    const Deployment d = sample_deployment(p, mode, rng);
    EXPECT_EQ(d.heads().size(), p.heads);
    EXPECT_EQ(d.members().size(), p.members);
    for (const Point& q : d.heads()) EXPECT_TRUE(d.contains(q));
    for (const Point& q : d.members()) EXPECT_TRUE(d.contains(q));
  }
}

TEST(Deployment, NeighborQueryMatchesBruteForce) {
  NetworkParams p;
  p.heads = 100;
  p.members = 100;
  for (const auto mode : {RegionMode::Torus, RegionMode::Disk}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      RandomStream rng(seed);
      const Deployment d = sample_deployment(p, mode, rng);
      for (const double radius : {5.0, 50.0, 77.7, 180.0, 400.0}) {
        for (const Point& q : d.members()) {
          ASSERT_EQ(d.neighbors_within(q, radius, Population::Heads), brute_force(d, q, radius, Population::Heads))
              << "seed " << seed << " radius " << radius;
        }
        const Point q = d.heads()[0];
        ASSERT_EQ(d.neighbors_within(q, radius, Population::Members), brute_force(d, q, radius, Population::Members));
      }
    }
  }
}

TEST(Deployment, NeighborRelationIsSymmetric) {
  NetworkParams p;
  RandomStream rng(8);
  const Deployment d = sample_deployment(p, RegionMode::Torus, rng);
  for (std::size_t m = 0; m < d.members().size(); ++m) {
    for (const std::size_t h : d.neighbors_within(d.members()[m], 50.0, Population::Heads)) {
      const auto back = d.neighbors_within(d.heads()[h], 50.0, Population::Members);
      EXPECT_TRUE(std::find(back.begin(), back.end(), m) != back.end());
    }
  }
}

TEST(Deployment, ReplayIsBitIdentical) {
  NetworkParams p;
  RandomStream a(77), b(77);
  const Deployment d1 = sample_deployment(p, RegionMode::Disk, a);
  const Deployment d2 = sample_deployment(p, RegionMode::Disk, b);
  for (std::size_t i = 0; i < p.heads; ++i) {
    EXPECT_EQ(d1.heads()[i].x, d2.heads()[i].x);
    EXPECT_EQ(d1.heads()[i].y, d2.heads()[i].y);
  }
}

// Count of heads within R_D of a uniformly drawn member, one per deployment.
std::vector<int> in_range_counts(const NetworkParams& p, int deployments, std::uint64_t seed) {
  std::vector<int> counts;
  for (int t = 0; t < deployments; ++t) {
    RandomStream rng = RandomStream::derive(seed, static_cast<std::uint64_t>(t));
    const Deployment d = sample_deployment(p, RegionMode::Torus, rng);
    const Point member = d.members()[rng.below(d.members().size())];
    counts.push_back(static_cast<int>(d.neighbors_within(member, p.cluster_radius, Population::Heads).size()));
  }
  return counts;
}

template <typename Pmf>
double chi_square(const std::vector<int>& counts, int last_bin, Pmf&& pmf) {
  std::vector<double> observed(last_bin + 1, 0.0);
  for (const int c : counts) observed[std::min(c, last_bin)] += 1.0;
  double tail = 1.0, stat = 0.0;
  for (int k = 0; k <= last_bin; ++k) {
    const double prob = k < last_bin ? pmf(k) : tail;
    tail -= prob;
    const double expected = prob * static_cast<double>(counts.size());
    stat += (observed[k] - expected) * (observed[k] - expected) / expected;
  }
  return stat;
}

TEST(Deployment, MeanInRangeHeadsMatchesIntensity) {
  const NetworkParams p;
  const auto counts = in_range_counts(p, 10'000, 42);
  double mean = 0.0, sq = 0.0;
  for (const int c : counts) mean += c;
  mean /= counts.size();
  for (const int c : counts) sq += (c - mean) * (c - mean);
  const double se = std::sqrt(sq / (counts.size() - 1) / counts.size());
  EXPECT_NEAR(mean, head_intensity(p), 3 * se);
}

// With exactly sigma heads the in-range count is Binomial(sigma, R_D^2/R_C^2),
// the finite-sigma form of Poisson(lambda_sigma).
TEST(Deployment, InRangeCountFitsBinomialLaw) {
  const NetworkParams p;
  const auto counts = in_range_counts(p, 10'000, 43);
  const double stat = chi_square(counts, 14, [&](int k) { return binomial_pmf(k, 100, 1.0 / 16.0); });
  EXPECT_LT(stat, 29.14);  // chi-square(14) upper 1% point
}

// Same lambda = 6.25 with 16x more heads: close to the Poisson limit.
TEST(Deployment, InRangeCountApproachesPoisson) {
  NetworkParams p;
  p.heads = 1600;
  p.cluster_radius = 12.5;
  p.members = 1;
  ASSERT_DOUBLE_EQ(head_intensity(p), 6.25);
  const auto counts = in_range_counts(p, 10'000, 44);
  const double stat = chi_square(counts, 14, [&](int k) { return poisson_pmf_direct(k, 6.25); });
  EXPECT_LT(stat, 29.14);
}

TEST(Deployment, DiskEdgeEffectOnlyNearBoundary) {
  const NetworkParams p;
  double interior = 0.0, all = 0.0;
  std::size_t n_interior = 0, n_all = 0;
  for (std::uint64_t t = 0; t < 2000; ++t) {
    RandomStream rng = RandomStream::derive(9, t);
    const Deployment d = sample_deployment(p, RegionMode::Disk, rng);
    for (const Point& m : d.members()) {
      const double c = static_cast<double>(d.neighbors_within(m, p.cluster_radius, Population::Heads).size());
      all += c;
      ++n_all;
      if (std::hypot(m.x, m.y) <= p.cell_radius - p.cluster_radius) {
        interior += c;
        ++n_interior;
      }
    }
  }
  interior /= n_interior;
  all /= n_all;
  EXPECT_NEAR(interior, head_intensity(p), 0.05);
  EXPECT_LT(all, interior - 0.3);
}

}  // namespace
}  // namespace d2dcache
