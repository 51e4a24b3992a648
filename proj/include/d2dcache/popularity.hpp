#pragma once

#include <cstddef>
#include <vector>

#include "d2dcache/random.hpp"

namespace d2dcache {

/// Zipf request law over a library of `file_count` ranked files:
/// P(rank i) = i^-gamma / sum_{j=1..M} j^-gamma.
///
/// Immutable after construction; share freely between threads. Ranks are
/// 1-based throughout the library.
class ZipfCatalog {
 public:
  /// Throws std::domain_error unless file_count >= 1 and exponent >= 0 (finite).
  ZipfCatalog(std::size_t file_count, double exponent);

  std::size_t size() const { return prefix_.size(); }
  double exponent() const { return exponent_; }
  /// sum_{j=1..M} j^-gamma, accumulated from rank 1 upward (largest term
  /// first).
  double normalization() const { return prefix_.back(); }

  /// Request probability of `rank`; throws std::domain_error outside [1, M].
  double pmf(std::size_t rank) const;

  /// Probability mass of the `count` most popular files. top_mass(0) == 0
  /// and top_mass(M) == 1 exactly. Throws std::domain_error if count > M.
  double top_mass(std::size_t count) const;

  /// Draws a rank with probability pmf(rank). Inverse-CDF lookup, O(log M).
  std::size_t sample(RandomStream& rng) const;

 private:
  double exponent_;
  // prefix_[k] = sum_{j=1..k+1} j^-gamma (unnormalized).
  std::vector<double> prefix_;
};

}  // namespace d2dcache
