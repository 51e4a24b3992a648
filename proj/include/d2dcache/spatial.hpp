#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "d2dcache/random.hpp"

namespace d2dcache {

/// Cell and cluster configuration. Defaults are the reference scenario:
/// 200 m cell, 50 m D2D radius, 100 heads, 250 members, 10-file caches and a
/// D2D/cellular per-bit energy ratio of 0.1.
struct NetworkParams {
  double cell_radius = 200.0;     // R_C, meters
  double cluster_radius = 50.0;   // R_D, meters
  std::size_t heads = 100;        // sigma
  std::size_t members = 250;      // phi
  std::size_t cache_capacity = 10;  // Omega, files per head
  double energy_ratio = 0.1;      // omega

  /// Throws std::domain_error naming the violated constraint.
  void validate() const;
};

/// Mean number of heads within R_D of a typical point: sigma * R_D^2 / R_C^2.
double head_intensity(const NetworkParams& params);
/// Same for members: phi * R_D^2 / R_C^2.
double member_intensity(const NetworkParams& params);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

enum class RegionMode {
  // Square of area pi*R_C^2 with wraparound distance. No boundary, so in-range
  // counts are homogeneous everywhere.
  Torus,
  // Disk of radius R_C centred at the origin, Euclidean distance.
  Disk,
};

enum class Population { Heads, Members };

/// Sampled head and member positions plus a bucket-grid index for range
/// queries. Immutable once built.
class Deployment {
 public:
  /// `bucket_size` is the grid cell edge; pick roughly the typical query
  /// radius. Throws std::domain_error if a point lies outside the region.
  Deployment(RegionMode mode, double cell_radius, std::vector<Point> heads, std::vector<Point> members,
             double bucket_size);

  RegionMode mode() const { return mode_; }
  double cell_radius() const { return cell_radius_; }
  /// Torus side length sqrt(pi) * R_C (only meaningful in torus mode).
  double torus_side() const;

  std::span<const Point> heads() const { return heads_; }
  std::span<const Point> members() const { return members_; }
  std::span<const Point> points(Population which) const {
    return which == Population::Heads ? heads() : members();
  }

  /// Distance under the region's metric.
  double distance(Point a, Point b) const;
  bool contains(Point p) const;

  /// Indices (ascending) of `which` points at distance <= radius from `query`.
  std::vector<std::size_t> neighbors_within(Point query, double radius, Population which) const;
  /// Allocation-free variant; `out` is cleared first.
  void neighbors_within(Point query, double radius, Population which, std::vector<std::size_t>& out) const;

 private:
  struct Grid {
    std::size_t cells_per_side = 1;
    double cell = 1.0;
    double origin = 0.0;
    std::vector<std::uint32_t> start;  // CSR offsets, size cells^2 + 1
    std::vector<std::uint32_t> items;
  };

  Grid build_grid(std::span<const Point> pts, double bucket_size) const;
  std::size_t cell_coord(double v, const Grid& g) const;

  RegionMode mode_;
  double cell_radius_;
  std::vector<Point> heads_;
  std::vector<Point> members_;
  Grid head_grid_;
  Grid member_grid_;
};

/// Places exactly params.heads heads and params.members members independently
/// and uniformly in the region (a Poisson process conditioned on its count).
/// Deterministic for a given stream state.
Deployment sample_deployment(const NetworkParams& params, RegionMode mode, RandomStream& rng);

}  // namespace d2dcache
