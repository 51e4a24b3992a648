#include "d2dcache/popularity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace d2dcache {

ZipfCatalog::ZipfCatalog(std::size_t file_count, double exponent) : exponent_(exponent) {
  if (file_count == 0) throw std::domain_error("zipf: library must hold at least one file");
  if (!(exponent >= 0.0) || !std::isfinite(exponent))
    throw std::domain_error("zipf: exponent must be finite and non-negative");
  prefix_.resize(file_count);
  double acc = 0.0;
  for (std::size_t i = 0; i < file_count; ++i) {
    acc += std::pow(static_cast<double>(i + 1), -exponent);
    prefix_[i] = acc;
  }
}

double ZipfCatalog::pmf(std::size_t rank) const {
  if (rank < 1 || rank > size())
    throw std::domain_error("zipf: rank " + std::to_string(rank) + " outside [1, " +
                            std::to_string(size()) + "]");
  return std::pow(static_cast<double>(rank), -exponent_) / normalization();
}

double ZipfCatalog::top_mass(std::size_t count) const {
  if (count > size())
    throw std::domain_error("zipf: top_mass count " + std::to_string(count) + " exceeds library size " +
                            std::to_string(size()));
  if (count == 0) return 0.0;
  return prefix_[count - 1] / normalization();
}

std::size_t ZipfCatalog::sample(RandomStream& rng) const {
  const double target = rng.uniform() * normalization();
  const auto it = std::upper_bound(prefix_.begin(), prefix_.end(), target);
  const auto idx = static_cast<std::size_t>(it - prefix_.begin());
  return std::min(idx, size() - 1) + 1;
}

}  // namespace d2dcache
