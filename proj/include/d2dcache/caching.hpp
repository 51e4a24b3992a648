#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "d2dcache/popularity.hpp"
#include "d2dcache/random.hpp"
#include "d2dcache/spatial.hpp"

namespace d2dcache {

/// Cache placement policy. Every variant caches a uniform random
/// Omega-subset of the `pool` most popular files, independently per head:
///   EPRC      pool = M (all files equally likely)
///   MPC       pool = Omega (every head holds the top Omega files)
///   TopM(m)   pool = m, Omega <= m <= M
/// so each file in the pool is held by a given head with probability
/// Omega / pool.
class CacheStrategy {
 public:
  enum class Kind { Eprc, Mpc, TopM };

  static CacheStrategy eprc() { return CacheStrategy(Kind::Eprc, 0); }
  static CacheStrategy mpc() { return CacheStrategy(Kind::Mpc, 0); }
  static CacheStrategy top(std::size_t pool) { return CacheStrategy(Kind::TopM, pool); }

  /// Parses "eprc", "mpc" or "top:<m>". Throws std::invalid_argument.
  static CacheStrategy parse(const std::string& text);

  Kind kind() const { return kind_; }
  /// Candidate pool size for a library of `file_count` files and caches of
  /// `capacity`. Throws std::domain_error if capacity > pool or pool > M.
  std::size_t pool(std::size_t capacity, std::size_t file_count) const;
  std::string name() const;

  friend bool operator==(const CacheStrategy&, const CacheStrategy&) = default;

 private:
  CacheStrategy(Kind kind, std::size_t pool) : kind_(kind), pool_(pool) {}

  Kind kind_;
  std::size_t pool_;
};

/// Per-head cache contents: exactly `capacity` distinct ranks per head,
/// stored sorted.
class CacheAssignment {
 public:
  CacheAssignment(std::size_t capacity, std::vector<std::uint32_t> ranks);

  std::size_t head_count() const { return capacity_ == 0 ? 0 : ranks_.size() / capacity_; }
  std::size_t capacity() const { return capacity_; }
  std::span<const std::uint32_t> head_set(std::size_t head) const {
    return {ranks_.data() + head * capacity_, capacity_};
  }
  bool head_caches_file(std::size_t head, std::size_t rank) const;

 private:
  std::size_t capacity_;
  std::vector<std::uint32_t> ranks_;
};

CacheAssignment assign_caches(const CacheStrategy& strategy, const NetworkParams& params, const ZipfCatalog& catalog,
                              RandomStream& rng);

}  // namespace d2dcache
