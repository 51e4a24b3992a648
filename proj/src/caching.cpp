#include "d2dcache/caching.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace d2dcache {

CacheStrategy CacheStrategy::parse(const std::string& text) {
  if (text == "eprc") return eprc();
  if (text == "mpc") return mpc();
  if (text.rfind("top:", 0) == 0) {
    std::size_t pool = 0;
    const char* first = text.data() + 4;
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, pool);
    if (ec == std::errc() && ptr == last && first != last) return top(pool);
  }
  throw std::invalid_argument("unknown cache strategy '" + text + "' (expected eprc, mpc or top:<m>)");
}

std::size_t CacheStrategy::pool(std::size_t capacity, std::size_t file_count) const {
  if (capacity > file_count)
    throw std::domain_error("cache capacity " + std::to_string(capacity) + " exceeds library size " +
                            std::to_string(file_count));
  std::size_t m = 0;
  switch (kind_) {
    case Kind::Eprc: m = file_count; break;
    case Kind::Mpc: m = capacity; break;
    case Kind::TopM: m = pool_; break;
  }
  if (m < capacity || m > file_count)
    throw std::domain_error("cached pool " + std::to_string(m) + " outside [" + std::to_string(capacity) + ", " +
                            std::to_string(file_count) + "]");
  return m;
}

std::string CacheStrategy::name() const {
  switch (kind_) {
    case Kind::Eprc: return "eprc";
    case Kind::Mpc: return "mpc";
    case Kind::TopM: return "top:" + std::to_string(pool_);
  }
  return {};
}

CacheAssignment::CacheAssignment(std::size_t capacity, std::vector<std::uint32_t> ranks)
    : capacity_(capacity), ranks_(std::move(ranks)) {
  if (capacity_ == 0) throw std::domain_error("cache capacity must be at least 1");
  if (ranks_.size() % capacity_ != 0) throw std::domain_error("cache sets must all hold exactly capacity files");
  for (std::size_t h = 0; h < head_count(); ++h) {
    auto first = ranks_.begin() + static_cast<std::ptrdiff_t>(h * capacity_);
    auto last = first + static_cast<std::ptrdiff_t>(capacity_);
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last) throw std::domain_error("cache set holds a duplicate file");
    if (*first < 1) throw std::domain_error("cache set holds rank 0");
  }
}

bool CacheAssignment::head_caches_file(std::size_t head, std::size_t rank) const {
  const auto set = head_set(head);
  return std::binary_search(set.begin(), set.end(), static_cast<std::uint32_t>(rank));
}

CacheAssignment assign_caches(const CacheStrategy& strategy, const NetworkParams& params, const ZipfCatalog& catalog,
                              RandomStream& rng) {
  const std::size_t capacity = params.cache_capacity;
  const std::size_t pool = strategy.pool(capacity, catalog.size());

  std::vector<std::uint32_t> ranks;
  ranks.reserve(params.heads * capacity);
  std::vector<std::uint32_t> chosen;
  chosen.reserve(capacity);
  for (std::size_t h = 0; h < params.heads; ++h) {
    chosen.clear();
    if (pool == capacity) {
      for (std::size_t r = 1; r <= capacity; ++r) chosen.push_back(static_cast<std::uint32_t>(r));
    } else {
      // Floyd's sampler: uniform capacity-subset of {1..pool}.
      for (std::size_t j = pool - capacity + 1; j <= pool; ++j) {
        const auto t = static_cast<std::uint32_t>(rng.below(j) + 1);
        const bool taken = std::find(chosen.begin(), chosen.end(), t) != chosen.end();
        chosen.push_back(taken ? static_cast<std::uint32_t>(j) : t);
      }
    }
    ranks.insert(ranks.end(), chosen.begin(), chosen.end());
  }
  return CacheAssignment(capacity, std::move(ranks));
}

}  // namespace d2dcache
