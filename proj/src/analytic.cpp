#include "d2dcache/analytic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace d2dcache {

namespace {

void check_pool(const NetworkParams& params, const ZipfCatalog& catalog, std::size_t pool) {
  params.validate();
  if (pool < params.cache_capacity || pool > catalog.size())
    throw std::domain_error("cached pool " + std::to_string(pool) + " outside [" +
                            std::to_string(params.cache_capacity) + ", " + std::to_string(catalog.size()) + "]");
}

std::optional<std::size_t> limit(SeriesForm form, std::size_t count) {
  if (form == SeriesForm::Closed) return std::nullopt;
  return count;
}

}  // namespace

double poisson_pmf(std::size_t k, double lambda) {
  if (!(lambda >= 0.0)) throw std::domain_error("poisson_pmf: lambda must be non-negative");
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  const double kd = static_cast<double>(k);
  return std::exp(kd * std::log(lambda) - lambda - std::lgamma(kd + 1.0));
}

double coverage_prob(double p, double lambda, std::optional<std::size_t> truncate_at) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("coverage_prob: p must lie in [0, 1]");
  if (!(lambda >= 0.0)) throw std::domain_error("coverage_prob: lambda must be non-negative");
  if (!truncate_at) return -std::expm1(-p * lambda);

  // k = 0 contributes nothing.
  double sum = 0.0;
  const double log_miss = std::log1p(-p);
  for (std::size_t k = 1; k <= *truncate_at; ++k) {
    const double miss = p == 1.0 ? 0.0 : std::exp(static_cast<double>(k) * log_miss);
    sum += (1.0 - miss) * poisson_pmf(k, lambda);
  }
  return sum;
}

double hit_prob(const NetworkParams& params, const ZipfCatalog& catalog, std::size_t pool, SeriesForm form) {
  check_pool(params, catalog, pool);
  const double per_head = static_cast<double>(params.cache_capacity) / static_cast<double>(pool);
  return catalog.top_mass(pool) * coverage_prob(per_head, head_intensity(params), limit(form, params.heads));
}

double d2d_service_prob(const ZipfCatalog& catalog, std::size_t capacity, std::size_t pool) {
  if (capacity < 1 || pool < capacity || pool > catalog.size())
    throw std::domain_error("cached pool " + std::to_string(pool) + " outside [" + std::to_string(capacity) +
                            ", " + std::to_string(catalog.size()) + "]");
  return static_cast<double>(capacity) / static_cast<double>(pool) * catalog.top_mass(pool);
}

double expected_active_heads(const NetworkParams& params, const ZipfCatalog& catalog, std::size_t pool,
                             SeriesForm form) {
  check_pool(params, catalog, pool);
  const double served = d2d_service_prob(catalog, params.cache_capacity, pool);
  return static_cast<double>(params.heads) *
         coverage_prob(served, member_intensity(params), limit(form, params.members));
}

double ec_ratio(const NetworkParams& params, const ZipfCatalog& catalog, std::size_t pool, SeriesForm form,
                EnergyExponent exponent) {
  check_pool(params, catalog, pool);
  if (params.members == 0) throw std::domain_error("energy ratio undefined without cluster members");
  const double scale = params.energy_ratio / static_cast<double>(params.members);
  const double miss = 1.0 - hit_prob(params, catalog, pool, form);
  if (exponent == EnergyExponent::Literal) {
    const double x = params.energy_ratio / static_cast<double>(pool) * catalog.top_mass(pool);
    return miss + scale * static_cast<double>(params.heads) * -std::expm1(-x);
  }
  return miss + scale * expected_active_heads(params, catalog, pool, form);
}

AnalyticReport evaluate(const NetworkParams& params, const ZipfCatalog& catalog, std::size_t pool,
                        SeriesForm form) {
  AnalyticReport r;
  r.pool = pool;
  r.hit_prob = hit_prob(params, catalog, pool, form);
  r.d2d_service_prob = d2d_service_prob(catalog, params.cache_capacity, pool);
  r.active_heads = expected_active_heads(params, catalog, pool, form);
  r.ec_ratio = params.members == 0 ? std::numeric_limits<double>::quiet_NaN()
                                   : ec_ratio(params, catalog, pool, form);
  return r;
}

}  // namespace d2dcache
