#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "d2dcache/caching.hpp"
#include "d2dcache/popularity.hpp"
#include "d2dcache/spatial.hpp"

namespace d2dcache {

struct SimConfig {
  std::size_t trials = 400;             // independent deployments
  std::size_t requests_per_trial = 1;   // request rounds per deployment
  RegionMode region = RegionMode::Torus;
  std::uint64_t seed = 1;
  CacheStrategy strategy = CacheStrategy::mpc();
  std::size_t workers = 1;              // threads; does not affect results

  void validate() const;
};

/// Point estimate with a 95% normal-approximation half-width.
struct Estimate {
  double mean = 0.0;
  double half_width = 0.0;
  std::size_t n = 0;
  // Set when n == 1: the spread is unknown and half_width is +infinity.
  bool degenerate = false;
};

struct SimResult {
  Estimate hit_rate;      // fraction of member requests served by an in-range head
  Estimate active_heads;  // heads with at least one in-range request they can serve
  Estimate ec_ratio;      // (1 - hit rate) + omega * active / phi
  std::size_t samples = 0;  // member requests drawn in total
};

/// 1.96 * s / sqrt(n) with s the sample standard deviation. Throws
/// std::domain_error for empty input; +infinity for a single sample.
double confidence_halfwidth(std::span<const double> samples);
/// Bernoulli form: `successes` out of `n` trials.
double confidence_halfwidth(std::size_t successes, std::size_t n);

Estimate summarize(std::span<const double> samples);

/// Spatial Monte Carlo over `config.trials` independent deployments. Trial t
/// draws from RandomStream::derive(seed, t) and per-trial values are reduced
/// in trial order, so the result does not depend on `config.workers`.
/// Requires phi > 0.
SimResult simulate(const NetworkParams& params, const ZipfCatalog& catalog, const SimConfig& config);

}  // namespace d2dcache
