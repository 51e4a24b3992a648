#include "d2dcache/optimize.hpp"

#include <stdexcept>
#include <string>

namespace d2dcache {

namespace {

template <typename Eval>
OptimizationResult scan(const NetworkParams& params, const ZipfCatalog& catalog, Objective objective,
                        Direction direction, Eval&& eval) {
  params.validate();
  if (params.cache_capacity > catalog.size())
    throw std::domain_error("cache capacity " + std::to_string(params.cache_capacity) + " exceeds library size " +
                            std::to_string(catalog.size()));
  OptimizationResult result;
  result.objective = objective;
  result.trace.reserve(catalog.size() - params.cache_capacity + 1);
  for (std::size_t pool = params.cache_capacity; pool <= catalog.size(); ++pool) {
    const double value = eval(pool);
    result.trace.emplace_back(pool, value);
    const bool better = result.trace.size() == 1 ||
                        (direction == Direction::Maximize ? value > result.objective_value
                                                          : value < result.objective_value);
    if (better) {
      result.best_pool = pool;
      result.objective_value = value;
    }
  }
  return result;
}

}  // namespace

OptimizationResult optimize_lhp(const NetworkParams& params, const ZipfCatalog& catalog, SeriesForm form) {
  return scan(params, catalog, Objective::HitProb, Direction::Maximize,
              [&](std::size_t pool) { return hit_prob(params, catalog, pool, form); });
}

OptimizationResult optimize_lec(const NetworkParams& params, const ZipfCatalog& catalog, Direction direction,
                                SeriesForm form) {
  if (params.members == 0) throw std::domain_error("energy ratio undefined without cluster members");
  return scan(params, catalog, Objective::EcRatio, direction,
              [&](std::size_t pool) { return ec_ratio(params, catalog, pool, form); });
}

CacheStrategy resolve_strategy(const std::string& name, const NetworkParams& params, const ZipfCatalog& catalog) {
  if (name == "lhp") return CacheStrategy::top(optimize_lhp(params, catalog).best_pool);
  if (name == "lec") return CacheStrategy::top(optimize_lec(params, catalog).best_pool);
  return CacheStrategy::parse(name);
}

}  // namespace d2dcache
