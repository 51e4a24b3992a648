#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "d2dcache/analytic.hpp"
#include "d2dcache/caching.hpp"

namespace d2dcache {

enum class Objective { HitProb, EcRatio };
enum class Direction { Minimize, Maximize };

struct OptimizationResult {
  std::size_t best_pool = 0;  // M_o*
  double objective_value = 0.0;
  Objective objective = Objective::HitProb;
  // (M_o, objective) for every M_o in [Omega, M], ascending.
  std::vector<std::pair<std::size_t, double>> trace;
};

/// Largest hit probability: exhaustive scan over M_o in [Omega, M], ties go
/// to the smallest M_o. Throws std::domain_error on invalid parameters.
OptimizationResult optimize_lhp(const NetworkParams& params, const ZipfCatalog& catalog,
                                SeriesForm form = SeriesForm::Closed);

/// Lowest energy ratio (or highest, with Direction::Maximize). Same scan and
/// tie rule. Requires phi > 0.
OptimizationResult optimize_lec(const NetworkParams& params, const ZipfCatalog& catalog,
                                Direction direction = Direction::Minimize, SeriesForm form = SeriesForm::Closed);

/// Maps "lhp" / "lec" to TopM at the respective optimum and anything else
/// through CacheStrategy::parse.
CacheStrategy resolve_strategy(const std::string& name, const NetworkParams& params, const ZipfCatalog& catalog);

}  // namespace d2dcache
