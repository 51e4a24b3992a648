#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "d2dcache/config.hpp"

namespace d2dcache {

/// One curve of a figure: a placement rule plus per-curve overrides.
struct Series {
  std::string label;
  // lhp | lec | eprc | mpc | top:<m> | pool (the swept value is M_o)
  std::string strategy;
  std::optional<std::size_t> heads;
  std::optional<double> gamma;
};

struct SweepSpec {
  std::string preset;
  SweepVariable variable = SweepVariable::Gamma;
  Metric metric = Metric::HitProb;
  std::vector<double> grid;
  std::vector<Series> series;
};

struct SweepRow {
  double swept_value = 0.0;
  std::string strategy;
  double analytic_value = 0.0;
  std::optional<double> mc_value;
  std::optional<double> mc_halfwidth;
  std::uint64_t seed = 0;
};

struct SweepSummary {
  std::filesystem::path csv;
  std::optional<std::filesystem::path> svg;
  std::filesystem::path manifest;
  std::size_t rows = 0;
};

/// Default gamma axis: 0.5, 0.6, ..., 2.0.
std::vector<double> default_gamma_grid();

/// Expands config.preset (or the custom vary/metric/grid/strategies keys)
/// into a validated spec. Throws ConfigError.
SweepSpec make_sweep_spec(const RunConfig& config);

/// Evaluates every (grid value, series) point, sorted by (swept value,
/// label). Monte Carlo columns are filled when config.trials > 0 and the
/// metric is a probability or ratio. Point k simulates with seed
/// RandomStream::derive(config.seed, k).next(), reported in the row.
/// Rows do not depend on config.workers.
std::vector<SweepRow> run_sweep_rows(const SweepSpec& spec, const RunConfig& config);

/// CSV text: header plus one line per row, LF endings, 9 significant digits.
std::string format_csv(const std::vector<SweepRow>& rows);

/// Static line plot of analytic values (lines) and Monte Carlo means (dots).
std::string format_svg(const SweepSpec& spec, const std::vector<SweepRow>& rows);

/// Computes the sweep, then writes <preset>.csv, optionally <preset>.svg, and
/// manifest.txt into out_dir. Nothing is written if evaluation fails.
/// Throws ConfigError/std::domain_error for bad input, IoError for
/// filesystem failures.
SweepSummary run_sweep(const RunConfig& config, const std::filesystem::path& out_dir);

}  // namespace d2dcache
