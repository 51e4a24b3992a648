#include <gtest/gtest.h>

#include <iostream>
#include <stdexcept>

#include "d2dcache/optimize.hpp"

namespace d2dcache {
namespace {

// Reversed-order rescan; ties go to the smallest pool, as in the library.
template <typename F>
std::size_t reverse_scan(std::size_t lo, std::size_t hi, bool maximize, F&& f) {
  std::size_t best = hi;
  double best_value = f(hi);
  for (std::size_t m = hi; m-- > lo;) {
    const double v = f(m);
    if (maximize ? v >= best_value : v <= best_value) {
      best = m;
      best_value = v;
    }
  }
  return best;
}

TEST(OptimizeLhp, Examples) {
  const NetworkParams p;
  const auto uniform = optimize_lhp(p, ZipfCatalog(500, 0.0));
  EXPECT_EQ(uniform.best_pool, 500U);
  for (std::size_t i = 1; i < uniform.trace.size(); ++i) EXPECT_GT(uniform.trace[i].second, uniform.trace[i - 1].second);

  const auto zipf1 = optimize_lhp(p, ZipfCatalog(500, 1.0));
  EXPECT_EQ(zipf1.best_pool, 27U);
  EXPECT_NEAR(zipf1.objective_value, 0.516286235642908855, 1e-13);
  EXPECT_EQ(zipf1.objective, Objective::HitProb);

  EXPECT_EQ(optimize_lhp(p, ZipfCatalog(500, 3.0)).best_pool, 10U);
}

TEST(OptimizeLhp, TraceCoversWholeRangeAndMatchesObjective) {
  const NetworkParams p;
  const ZipfCatalog c(500, 1.2);
  const auto r = optimize_lhp(p, c);
  ASSERT_EQ(r.trace.size(), 491U);
  EXPECT_EQ(r.trace.front().first, 10U);
  EXPECT_EQ(r.trace.back().first, 500U);
  EXPECT_DOUBLE_EQ(r.objective_value, hit_prob(p, c, r.best_pool));
  EXPECT_GE(r.best_pool, 10U);
  EXPECT_LE(r.best_pool, 500U);
}

TEST(OptimizeLec, Examples) {
  NetworkParams p;
  const ZipfCatalog c(500, 1.0);
  const auto r = optimize_lec(p, c);
  EXPECT_EQ(r.best_pool, 27U);
  EXPECT_NEAR(r.objective_value, 0.522260786346793342, 1e-13);

  p.heads = 150;
  const auto r150 = optimize_lec(p, c);
  EXPECT_EQ(r150.best_pool, 40U);
  EXPECT_NEAR(r150.objective_value, 0.485459746081020, 1e-12);
  EXPECT_GE(r150.objective_value, 0.44);
  EXPECT_LE(r150.objective_value, 0.50);

  p = {};
  const auto r14 = optimize_lec(p, ZipfCatalog(500, 1.4));
  EXPECT_EQ(r14.best_pool, 19U);
  EXPECT_LT(r14.objective_value, 0.30);
}

TEST(OptimizeLec, ZeroEnergyRatioMatchesLhp) {
  NetworkParams p;
  p.energy_ratio = 0.0;
  for (int k = 0; k <= 30; ++k) {
    const ZipfCatalog c(500, k / 10.0);
    EXPECT_EQ(optimize_lec(p, c).best_pool, optimize_lhp(p, c).best_pool) << "gamma " << k / 10.0;
  }
}

TEST(OptimizeLec, MaximizeDirection) {
  const NetworkParams p;
  const ZipfCatalog c(500, 1.0);
  const auto mx = optimize_lec(p, c, Direction::Maximize);
  for (const auto& [pool, v] : mx.trace) EXPECT_LE(v, mx.objective_value);
}

TEST(OptimizeLec, RequiresMembers) {
  NetworkParams p;
  p.members = 0;
  EXPECT_THROW(optimize_lec(p, ZipfCatalog(500, 1.0)), std::domain_error);
  NetworkParams big;
  big.cache_capacity = 600;
  EXPECT_THROW(optimize_lhp(big, ZipfCatalog(500, 1.0)), std::domain_error);
}

TEST(Optimize, GlobalOptimumAgreesWithReversedRescan) {
  for (const std::size_t heads : {50UL, 100UL, 150UL}) {
    NetworkParams p;
    p.heads = heads;
    for (int k = 0; k <= 25; ++k) {
      const ZipfCatalog c(500, k / 10.0);
      const auto lhp = optimize_lhp(p, c);
      EXPECT_EQ(lhp.best_pool, reverse_scan(10, 500, true, [&](std::size_t m) { return hit_prob(p, c, m); }));
      const auto lec = optimize_lec(p, c);
      EXPECT_EQ(lec.best_pool, reverse_scan(10, 500, false, [&](std::size_t m) { return ec_ratio(p, c, m); }));
      EXPECT_LE(lec.objective_value, ec_ratio(p, c, lhp.best_pool));
    }
  }
}

TEST(Optimize, LhpOptimumNonIncreasingInGamma) {
  for (const std::size_t heads : {100UL, 150UL}) {
    NetworkParams p;
    p.heads = heads;
    std::size_t prev = 500;
    for (int k = 0; k <= 6; ++k) {
      const double gamma = 0.5 + 0.25 * k;
      const auto r = optimize_lhp(p, ZipfCatalog(500, gamma));
      EXPECT_LE(r.best_pool, prev) << "gamma " << gamma;
      prev = r.best_pool;
    }
  }
}

// Observed trend only; reported, never failed.
TEST(Optimize, LecCachesAtLeastAsManyAsLhpTrend) {
  for (const std::size_t heads : {100UL, 150UL}) {
    NetworkParams p;
    p.heads = heads;
    for (int k = 5; k <= 20; ++k) {
      const ZipfCatalog c(500, k / 10.0);
      const auto lhp = optimize_lhp(p, c).best_pool;
      const auto lec = optimize_lec(p, c).best_pool;
      if (lec < lhp)
        std::cout << "[trend] sigma=" << heads << " gamma=" << k / 10.0 << ": LEC pool " << lec << " < LHP pool "
                  << lhp << '\n';
    }
  }
}

}  // namespace
}  // namespace d2dcache
