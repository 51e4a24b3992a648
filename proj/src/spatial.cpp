#include "d2dcache/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace d2dcache {

void NetworkParams::validate() const {
  if (!(cell_radius > 0.0) || !std::isfinite(cell_radius))
    throw std::domain_error("cell radius must be positive and finite");
  if (!(cluster_radius > 0.0) || cluster_radius > cell_radius)
    throw std::domain_error("cluster radius must satisfy 0 < R_D <= R_C");
  if (cache_capacity < 1) throw std::domain_error("cache capacity must be at least 1");
  if (!(energy_ratio >= 0.0) || !std::isfinite(energy_ratio))
    throw std::domain_error("energy ratio must be finite and non-negative");
}

namespace {
double coverage_fraction(const NetworkParams& p) {
  const double r = p.cluster_radius / p.cell_radius;
  return r * r;
}

// Largest grid resolution per side; keeps memory bounded for tiny buckets.
constexpr std::size_t kMaxCellsPerSide = 1024;
}  // namespace

double head_intensity(const NetworkParams& params) {
  return static_cast<double>(params.heads) * coverage_fraction(params);
}

double member_intensity(const NetworkParams& params) {
  return static_cast<double>(params.members) * coverage_fraction(params);
}

Deployment::Deployment(RegionMode mode, double cell_radius, std::vector<Point> heads, std::vector<Point> members,
                       double bucket_size)
    : mode_(mode), cell_radius_(cell_radius), heads_(std::move(heads)), members_(std::move(members)) {
  if (!(cell_radius > 0.0)) throw std::domain_error("deployment: cell radius must be positive");
  if (!(bucket_size > 0.0)) throw std::domain_error("deployment: bucket size must be positive");
  for (const auto* set : {&heads_, &members_})
    for (const Point& p : *set)
      if (!contains(p)) throw std::domain_error("deployment: point outside region");
  head_grid_ = build_grid(heads_, bucket_size);
  member_grid_ = build_grid(members_, bucket_size);
}

double Deployment::torus_side() const { return std::sqrt(std::numbers::pi) * cell_radius_; }

bool Deployment::contains(Point p) const {
  if (mode_ == RegionMode::Torus) {
    const double side = torus_side();
    return p.x >= 0.0 && p.x < side && p.y >= 0.0 && p.y < side;
  }
  // Slack for rounding in polar sampling.
  return p.x * p.x + p.y * p.y <= cell_radius_ * cell_radius_ * (1.0 + 1e-12);
}

double Deployment::distance(Point a, Point b) const {
  double dx = std::abs(a.x - b.x);
  double dy = std::abs(a.y - b.y);
  if (mode_ == RegionMode::Torus) {
    const double side = torus_side();
    dx = std::min(dx, side - dx);
    dy = std::min(dy, side - dy);
  }
  return std::hypot(dx, dy);
}

std::size_t Deployment::cell_coord(double v, const Grid& g) const {
  const double c = std::floor((v - g.origin) / g.cell);
  if (c <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(c), g.cells_per_side - 1);
}

Deployment::Grid Deployment::build_grid(std::span<const Point> pts, double bucket_size) const {
  Grid g;
  const double extent = mode_ == RegionMode::Torus ? torus_side() : 2.0 * cell_radius_;
  g.origin = mode_ == RegionMode::Torus ? 0.0 : -cell_radius_;
  g.cells_per_side = std::clamp<std::size_t>(static_cast<std::size_t>(extent / bucket_size), 1, kMaxCellsPerSide);
  g.cell = extent / static_cast<double>(g.cells_per_side);

  const std::size_t n = g.cells_per_side;
  std::vector<std::size_t> bucket(pts.size());
  g.start.assign(n * n + 1, 0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bucket[i] = cell_coord(pts[i].y, g) * n + cell_coord(pts[i].x, g);
    ++g.start[bucket[i] + 1];
  }
  for (std::size_t c = 0; c < n * n; ++c) g.start[c + 1] += g.start[c];
  g.items.resize(pts.size());
  std::vector<std::uint32_t> fill(g.start.begin(), g.start.end() - 1);
  for (std::size_t i = 0; i < pts.size(); ++i) g.items[fill[bucket[i]]++] = static_cast<std::uint32_t>(i);
  return g;
}

std::vector<std::size_t> Deployment::neighbors_within(Point query, double radius, Population which) const {
  std::vector<std::size_t> out;
  neighbors_within(query, radius, which, out);
  return out;
}

void Deployment::neighbors_within(Point query, double radius, Population which,
                                  std::vector<std::size_t>& out) const {
  out.clear();
  if (!(radius > 0.0)) throw std::domain_error("neighbors_within: radius must be positive");
  const auto pts = points(which);
  const Grid& g = which == Population::Heads ? head_grid_ : member_grid_;
  if (pts.empty()) return;

  const auto n = static_cast<std::ptrdiff_t>(g.cells_per_side);
  const auto reach = static_cast<std::ptrdiff_t>(std::ceil(radius / g.cell));
  const auto qx = static_cast<std::ptrdiff_t>(cell_coord(std::clamp(query.x, g.origin, g.origin + n * g.cell), g));
  const auto qy = static_cast<std::ptrdiff_t>(cell_coord(std::clamp(query.y, g.origin, g.origin + n * g.cell), g));

  auto scan_cell = [&](std::ptrdiff_t cx, std::ptrdiff_t cy) {
    const auto c = static_cast<std::size_t>(cy * n + cx);
    for (auto k = g.start[c]; k < g.start[c + 1]; ++k) {
      const std::size_t idx = g.items[k];
      if (distance(query, pts[idx]) <= radius) out.push_back(idx);
    }
  };

  if (mode_ == RegionMode::Torus && 2 * reach + 1 >= n) {
    for (std::ptrdiff_t cy = 0; cy < n; ++cy)
      for (std::ptrdiff_t cx = 0; cx < n; ++cx) scan_cell(cx, cy);
  } else if (mode_ == RegionMode::Torus) {
    for (std::ptrdiff_t dy = -reach; dy <= reach; ++dy)
      for (std::ptrdiff_t dx = -reach; dx <= reach; ++dx)
        scan_cell(((qx + dx) % n + n) % n, ((qy + dy) % n + n) % n);
  } else {
    for (std::ptrdiff_t cy = std::max<std::ptrdiff_t>(0, qy - reach); cy <= std::min(n - 1, qy + reach); ++cy)
      for (std::ptrdiff_t cx = std::max<std::ptrdiff_t>(0, qx - reach); cx <= std::min(n - 1, qx + reach); ++cx)
        scan_cell(cx, cy);
  }
  std::sort(out.begin(), out.end());
}

Deployment sample_deployment(const NetworkParams& params, RegionMode mode, RandomStream& rng) {
  params.validate();
  const double rc = params.cell_radius;
  const double side = std::sqrt(std::numbers::pi) * rc;

  auto draw = [&]() -> Point {
    if (mode == RegionMode::Torus) {
      // u * side can round up to side itself.
      const double x = std::min(rng.uniform() * side, std::nextafter(side, 0.0));
      const double y = std::min(rng.uniform() * side, std::nextafter(side, 0.0));
      return {x, y};
    }
    const double r = rc * std::sqrt(rng.uniform());
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    return {r * std::cos(theta), r * std::sin(theta)};
  };

  std::vector<Point> heads(params.heads);
  for (auto& p : heads) p = draw();
  std::vector<Point> members(params.members);
  for (auto& p : members) p = draw();
  return Deployment(mode, rc, std::move(heads), std::move(members), params.cluster_radius);
}

}  // namespace d2dcache
