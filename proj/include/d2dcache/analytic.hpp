#pragma once

#include <cstddef>
#include <optional>

#include "d2dcache/popularity.hpp"
#include "d2dcache/spatial.hpp"

namespace d2dcache {

// Closed-form model of a D2D multicast cell where every head caches Omega
// files drawn uniformly from the `pool` (M_o) most popular ones. All
// functions are pure.

/// How Poisson coverage sums are evaluated.
enum class SeriesForm {
  // 1 - exp(-p * lambda): the infinite sum.
  Closed,
  // Sum over k = 0..sigma (head coverage) or k = 0..phi (member coverage).
  Truncated,
};

/// Exponent used in the active-head term of the energy ratio.
enum class EnergyExponent {
  // lambda_phi * (Omega / M_o) * top_mass(M_o); makes the ratio
  // (1 - hit) + (omega / phi) * E[active heads].
  Reconciled,
  // (omega / M_o) * top_mass(M_o), kept for comparison only.
  Literal,
};

struct AnalyticReport {
  std::size_t pool = 0;            // M_o
  double hit_prob = 0.0;           // E[P_hit]
  double d2d_service_prob = 0.0;   // E[P_D2D]
  double active_heads = 0.0;       // E[sigma_a]
  double ec_ratio = 0.0;           // R_EC; NaN when there are no members
};

/// lambda^k e^-lambda / k!, evaluated in log space.
double poisson_pmf(std::size_t k, double lambda);

/// Probability that at least one of Poisson(lambda) independent holders has
/// the item, each with probability p. `truncate_at` = nullopt gives the
/// closed form 1 - e^{-p lambda}; otherwise sum_{k=0..K}[1-(1-p)^k] Pois(k).
double coverage_prob(double p, double lambda, std::optional<std::size_t> truncate_at);

/// sum_{i<=M_o} f_i * coverage(Omega/M_o, lambda_sigma).
/// Throws std::domain_error unless Omega <= M_o <= M.
double hit_prob(const NetworkParams& params, const ZipfCatalog& catalog, std::size_t pool,
                SeriesForm form = SeriesForm::Closed);

/// (Omega / M_o) * top_mass(M_o).
double d2d_service_prob(const ZipfCatalog& catalog, std::size_t capacity, std::size_t pool);

/// sigma * coverage(E[P_D2D], lambda_phi).
double expected_active_heads(const NetworkParams& params, const ZipfCatalog& catalog, std::size_t pool,
                             SeriesForm form = SeriesForm::Closed);

/// Hybrid-to-cellular energy ratio. Throws std::domain_error when phi == 0.
double ec_ratio(const NetworkParams& params, const ZipfCatalog& catalog, std::size_t pool,
                SeriesForm form = SeriesForm::Closed, EnergyExponent exponent = EnergyExponent::Reconciled);

/// All of the above at one pool size. ec_ratio is NaN if phi == 0.
AnalyticReport evaluate(const NetworkParams& params, const ZipfCatalog& catalog, std::size_t pool,
                        SeriesForm form = SeriesForm::Closed);

}  // namespace d2dcache
