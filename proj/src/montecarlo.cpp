#include "d2dcache/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace d2dcache {

namespace {

constexpr double kZ95 = 1.96;

struct TrialOutcome {
  double hit_rate = 0.0;
  double active_heads = 0.0;
  double ec_ratio = 0.0;
};

TrialOutcome run_trial(const NetworkParams& params, const ZipfCatalog& catalog, const SimConfig& config,
                       std::size_t trial) {
  RandomStream rng = RandomStream::derive(config.seed, trial);
  const Deployment deployment = sample_deployment(params, config.region, rng);
  const CacheAssignment caches = assign_caches(config.strategy, params, catalog, rng);

  const auto members = deployment.members();
  std::vector<std::vector<std::size_t>> reachable(members.size());
  for (std::size_t m = 0; m < members.size(); ++m)
    deployment.neighbors_within(members[m], params.cluster_radius, Population::Heads, reachable[m]);

  std::size_t hits = 0;
  std::size_t active_total = 0;
  std::vector<char> active(params.heads);
  for (std::size_t round = 0; round < config.requests_per_trial; ++round) {
    std::fill(active.begin(), active.end(), 0);
    for (std::size_t m = 0; m < members.size(); ++m) {
      const std::size_t rank = catalog.sample(rng);
      bool hit = false;
      for (const std::size_t h : reachable[m]) {
        if (caches.head_caches_file(h, rank)) {
          hit = true;
          active[h] = 1;
        }
      }
      hits += hit ? 1 : 0;
    }
    active_total += static_cast<std::size_t>(std::count(active.begin(), active.end(), 1));
  }

  const double rounds = static_cast<double>(config.requests_per_trial);
  TrialOutcome out;
  out.hit_rate = static_cast<double>(hits) / (rounds * static_cast<double>(members.size()));
  out.active_heads = static_cast<double>(active_total) / rounds;
  out.ec_ratio = (1.0 - out.hit_rate) + params.energy_ratio * out.active_heads / static_cast<double>(params.members);
  return out;
}

}  // namespace

void SimConfig::validate() const {
  if (trials < 1) throw std::domain_error("simulation needs at least one trial");
  if (requests_per_trial < 1) throw std::domain_error("simulation needs at least one request round per trial");
  if (workers < 1) throw std::domain_error("simulation needs at least one worker");
}

double confidence_halfwidth(std::span<const double> samples) {
  if (samples.empty()) throw std::domain_error("confidence_halfwidth: no samples");
  if (samples.size() == 1) return std::numeric_limits<double>::infinity();
  if (std::ranges::all_of(samples, [&](double x) { return x == samples.front(); })) return 0.0;
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (const double x : samples) mean += x;
  mean /= n;
  double ss = 0.0;
  for (const double x : samples) ss += (x - mean) * (x - mean);
  return kZ95 * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
}

double confidence_halfwidth(std::size_t successes, std::size_t n) {
  if (n == 0) throw std::domain_error("confidence_halfwidth: no samples");
  if (successes > n) throw std::domain_error("confidence_halfwidth: more successes than samples");
  if (n == 1) return std::numeric_limits<double>::infinity();
  const double nd = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nd;
  const double variance = p * (1.0 - p) * nd / (nd - 1.0);
  return kZ95 * std::sqrt(variance) / std::sqrt(nd);
}

Estimate summarize(std::span<const double> samples) {
  if (samples.empty()) throw std::domain_error("summarize: no samples");
  Estimate e;
  e.n = samples.size();
  double sum = 0.0;
  for (const double x : samples) sum += x;
  e.mean = sum / static_cast<double>(e.n);
  e.half_width = confidence_halfwidth(samples);
  e.degenerate = e.n == 1;
  return e;
}

SimResult simulate(const NetworkParams& params, const ZipfCatalog& catalog, const SimConfig& config) {
  params.validate();
  config.validate();
  config.strategy.pool(params.cache_capacity, catalog.size());
  if (params.members == 0) throw std::domain_error("simulation needs at least one cluster member");

  std::vector<TrialOutcome> outcomes(config.trials);
  const std::size_t workers = std::min(config.workers, config.trials);
  if (workers == 1) {
    for (std::size_t t = 0; t < config.trials; ++t) outcomes[t] = run_trial(params, catalog, config, t);
  } else {
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t t = w; t < config.trials; t += workers)
              outcomes[t] = run_trial(params, catalog, config, t);
          } catch (...) {
            const std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        });
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<double> hit(config.trials);
  std::vector<double> active(config.trials);
  std::vector<double> ec(config.trials);
  for (std::size_t t = 0; t < config.trials; ++t) {
    hit[t] = outcomes[t].hit_rate;
    active[t] = outcomes[t].active_heads;
    ec[t] = outcomes[t].ec_ratio;
  }
  SimResult result;
  result.hit_rate = summarize(hit);
  result.active_heads = summarize(active);
  result.ec_ratio = summarize(ec);
  result.samples = config.trials * config.requests_per_trial * params.members;
  return result;
}

}  // namespace d2dcache
