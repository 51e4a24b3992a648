#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "d2dcache/popularity.hpp"

namespace d2dcache {
namespace {

TEST(ZipfCatalog, RejectsInvalidConstruction) {
  EXPECT_THROW(ZipfCatalog(0, 1.0), std::domain_error);
  EXPECT_THROW(ZipfCatalog(10, -0.1), std::domain_error);
  EXPECT_THROW(ZipfCatalog(10, NAN), std::domain_error);
}

TEST(ZipfCatalog, PmfExamples) {
  EXPECT_DOUBLE_EQ(ZipfCatalog(1, 0.8).pmf(1), 1.0);
  const ZipfCatalog uniform(500, 0.0);
  for (std::size_t i : {1, 17, 500}) EXPECT_NEAR(uniform.pmf(i), 0.002, 1e-15);
  // 1 / (1 + 1/2 + 1/3)
  EXPECT_NEAR(ZipfCatalog(3, 1.0).pmf(1), 6.0 / 11.0, 1e-15);
}

TEST(ZipfCatalog, PmfRejectsOutOfRangeRank) {
  const ZipfCatalog c(5, 1.0);
  EXPECT_THROW(c.pmf(0), std::domain_error);
  EXPECT_THROW(c.pmf(6), std::domain_error);
}

TEST(ZipfCatalog, TopMassExamples) {
  const ZipfCatalog c(500, 1.0);
  EXPECT_EQ(c.top_mass(500), 1.0);
  EXPECT_EQ(c.top_mass(0), 0.0);
  // H_10 / H_500, high-precision summation.
  EXPECT_NEAR(c.top_mass(10), 0.431185689449363418, 1e-14);
  EXPECT_NEAR(ZipfCatalog(500, 0.0).top_mass(50), 0.1, 1e-14);
  EXPECT_THROW(c.top_mass(501), std::domain_error);
}

TEST(ZipfCatalog, NormalizationAndMonotonicityProperty) {
  for (const std::size_t m : {1UL, 2UL, 7UL, 500UL, 10000UL, 100000UL}) {
    for (const double gamma : {0.0, 0.5, 1.0, 1.7, 2.5, 4.0}) {
      const ZipfCatalog c(m, gamma);
      long double sum = 0.0L;
      double prev = 2.0;
      for (std::size_t i = 1; i <= m; ++i) {
        const double p = c.pmf(i);
        EXPECT_LE(p, prev) << "m=" << m << " gamma=" << gamma << " i=" << i;
        prev = p;
        sum += p;
      }
      EXPECT_NEAR(static_cast<double>(sum), 1.0, 1e-12) << "m=" << m << " gamma=" << gamma;
    }
  }
}

TEST(ZipfCatalog, TopMassStrictlyIncreasing) {
  for (const double gamma : {0.0, 0.8, 1.4, 2.0}) {
    const ZipfCatalog c(500, gamma);
    for (std::size_t m = 1; m <= 500; ++m) EXPECT_GT(c.top_mass(m), c.top_mass(m - 1)) << gamma << " " << m;
  }
}

TEST(ZipfCatalog, SingleFileAlwaysSamplesRankOne) {
  const ZipfCatalog c(1, 3.0);
  RandomStream rng(7);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(c.sample(rng), 1U);
}

TEST(ZipfCatalog, SamplingIsDeterministicForASeed) {
  const ZipfCatalog c(500, 1.0);
  RandomStream a(99), b(99);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(c.sample(a), c.sample(b));
}

TEST(ZipfCatalog, RankOneFrequencyMatchesPmf) {
  const ZipfCatalog c(500, 1.0);
  RandomStream rng(2024);
  constexpr int kDraws = 1'000'000;
  int ones = 0;
  for (int i = 0; i < kDraws; ++i) ones += c.sample(rng) == 1;
  const double p = c.pmf(1);
  const double se = std::sqrt(p * (1 - p) / kDraws);
  EXPECT_NEAR(static_cast<double>(ones) / kDraws, p, 3 * se);
}

TEST(ZipfCatalog, UniformChiSquareGoodnessOfFit) {
  const ZipfCatalog c(500, 0.0);
  RandomStream rng(11);
  constexpr int kDraws = 1'000'000;
  std::vector<int> counts(501, 0);
  for (int i = 0; i < kDraws; ++i) ++counts[c.sample(rng)];
  const double expected = kDraws / 500.0;
  double chi2 = 0.0;
  for (std::size_t i = 1; i <= 500; ++i) chi2 += (counts[i] - expected) * (counts[i] - expected) / expected;
  // Upper 1% point of chi-square with 499 degrees of freedom.
  EXPECT_LT(chi2, 575.4);
}

TEST(ZipfCatalog, EmpiricalCdfConvergesKolmogorovSmirnov) {
  const ZipfCatalog c(500, 1.2);
  RandomStream rng(5);
  constexpr int kDraws = 200'000;
  std::vector<int> counts(501, 0);
  for (int i = 0; i < kDraws; ++i) ++counts[c.sample(rng)];
  double cum = 0.0, ks = 0.0;
  for (std::size_t i = 1; i <= 500; ++i) {
    cum += counts[i];
    ks = std::max(ks, std::abs(cum / kDraws - c.top_mass(i)));
  }
  // 1% critical value 1.63 / sqrt(n).
  EXPECT_LT(ks, 1.63 / std::sqrt(static_cast<double>(kDraws)));
}

}  // namespace
}  // namespace d2dcache
