#include "d2dcache/sweep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "d2dcache/analytic.hpp"
#include "d2dcache/optimize.hpp"

namespace d2dcache {

namespace {

std::vector<Series> cross(std::initializer_list<const char*> strategies, std::initializer_list<std::size_t> heads) {
  std::vector<Series> out;
  for (const char* s : strategies)
    for (const std::size_t h : heads) out.push_back({std::string(s) + "/sigma=" + std::to_string(h), s, h, {}});
  return out;
}

bool is_integer(double v) { return std::floor(v) == v; }

void check_grid(const SweepSpec& spec, const RunConfig& config) {
  if (spec.grid.empty()) throw ConfigError("grid", "sweep grid is empty");
  for (std::size_t i = 1; i < spec.grid.size(); ++i)
    if (!(spec.grid[i] > spec.grid[i - 1])) throw ConfigError("grid", "values must be strictly increasing");
  for (const double v : spec.grid) {
    switch (spec.variable) {
      case SweepVariable::Pool:
        if (!is_integer(v) || v < static_cast<double>(config.network.cache_capacity) ||
            v > static_cast<double>(config.files))
          throw ConfigError("grid", "pool values must be integers in [omega-cache, files]");
        break;
      case SweepVariable::Gamma:
        if (v < 0.0) throw ConfigError("grid", "gamma values must be non-negative");
        break;
      case SweepVariable::Members:
        if (!is_integer(v) || v < 1.0) throw ConfigError("grid", "member counts must be positive integers");
        break;
    }
  }
  for (const Series& s : spec.series)
    if (s.strategy == "pool" && spec.variable != SweepVariable::Pool)
      throw ConfigError("strategies", "'pool' requires vary = pool");
}

struct Job {
  double x;
  const Series* series;
};

SweepRow evaluate_point(const SweepSpec& spec, const RunConfig& config, const Job& job, std::uint64_t seed) {
  NetworkParams params = config.network;
  double gamma = config.gamma;
  if (job.series->heads) params.heads = *job.series->heads;
  if (job.series->gamma) gamma = *job.series->gamma;
  if (spec.variable == SweepVariable::Gamma) gamma = job.x;
  if (spec.variable == SweepVariable::Members) params.members = static_cast<std::size_t>(job.x);
  const ZipfCatalog catalog(config.files, gamma);

  const std::string& name = job.series->strategy;
  const CacheStrategy strategy = name == "pool" ? CacheStrategy::top(static_cast<std::size_t>(job.x))
                                                 : resolve_strategy(name, params, catalog);
  const std::size_t pool = strategy.pool(params.cache_capacity, catalog.size());

  SweepRow row;
  row.swept_value = job.x;
  row.strategy = job.series->label;
  row.seed = seed;
  switch (spec.metric) {
    case Metric::HitProb: row.analytic_value = hit_prob(params, catalog, pool); break;
    case Metric::EcRatio: row.analytic_value = ec_ratio(params, catalog, pool); break;
    case Metric::OptimalPool: row.analytic_value = static_cast<double>(pool); break;
  }
  if (config.trials > 0 && spec.metric != Metric::OptimalPool) {
    SimConfig sim = config.sim_config(strategy);
    sim.seed = seed;
    sim.workers = 1;
    const SimResult r = simulate(params, catalog, sim);
    const Estimate& e = spec.metric == Metric::HitProb ? r.hit_rate : r.ec_ratio;
    row.mc_value = e.mean;
    row.mc_halfwidth = e.half_width;
  }
  return row;
}

}  // namespace

std::vector<double> default_gamma_grid() {
  std::vector<double> grid;
  for (int k = 5; k <= 20; ++k) grid.push_back(k / 10.0);
  return grid;
}

SweepSpec make_sweep_spec(const RunConfig& config) {
  SweepSpec spec;
  spec.preset = config.preset;
  if (config.preset == "fig2") {
    spec.variable = SweepVariable::Pool;
    spec.metric = Metric::HitProb;
    for (std::size_t m = config.network.cache_capacity; m <= config.files; ++m)
      spec.grid.push_back(static_cast<double>(m));
    for (const double g : {0.8, 1.0, 1.2, 1.4}) spec.series.push_back({"gamma=" + format_number(g), "pool", {}, g});
  } else if (config.preset == "fig3") {
    spec.variable = SweepVariable::Gamma;
    spec.metric = Metric::HitProb;
    spec.grid = default_gamma_grid();
    spec.series = cross({"lhp", "mpc", "eprc"}, {100, 150});
  } else if (config.preset == "fig4") {
    spec.variable = SweepVariable::Gamma;
    spec.metric = Metric::EcRatio;
    spec.grid = default_gamma_grid();
    spec.series = cross({"lec", "lhp", "mpc", "eprc"}, {100, 150});
  } else if (config.preset == "fig5") {
    spec.variable = SweepVariable::Gamma;
    spec.metric = Metric::OptimalPool;
    spec.grid = default_gamma_grid();
    spec.series = cross({"lhp", "lec"}, {100, 150});
  } else if (config.preset == "fig6") {
    spec.variable = SweepVariable::Members;
    spec.metric = Metric::EcRatio;
    for (int phi = 50; phi <= 500; phi += 50) spec.grid.push_back(phi);
    for (const char* s : {"lec", "lhp", "eprc"})
      for (const double g : {1.0, 1.4})
        spec.series.push_back({std::string(s) + "/gamma=" + format_number(g), s, {}, g});
  } else if (config.preset == "custom") {
    spec.variable = config.vary;
    spec.metric = config.metric;
    if (!config.grid_overridden) throw ConfigError("grid", "custom sweeps need an explicit grid");
    for (const auto& s : config.strategies) spec.series.push_back({s, s, {}, {}});
  } else {
    throw ConfigError("preset", "unknown preset '" + config.preset + "'");
  }
  if (config.grid_overridden) spec.grid = config.grid;
  check_grid(spec, config);
  return spec;
}

std::vector<SweepRow> run_sweep_rows(const SweepSpec& spec, const RunConfig& config) {
  std::vector<Job> jobs;
  for (const double x : spec.grid)
    for (const Series& s : spec.series) jobs.push_back({x, &s});
  std::stable_sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.series->label < b.series->label;
  });

  std::vector<SweepRow> rows(jobs.size());
  auto run = [&](std::size_t k) {
    rows[k] = evaluate_point(spec, config, jobs[k], RandomStream::derive(config.seed, k).next());
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(config.workers, jobs.size()));
  if (workers == 1) {
    for (std::size_t k = 0; k < jobs.size(); ++k) run(k);
    return rows;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t k = w; k < jobs.size(); k += workers) run(k);
        } catch (...) {
          const std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string format_csv(const std::vector<SweepRow>& rows) {
  std::string out = "swept_value,strategy,analytic_value,mc_value,mc_halfwidth,seed\n";
  for (const SweepRow& r : rows) {
    out += format_number(r.swept_value);
    out += ',';
    out += r.strategy;
    out += ',';
    out += format_number(r.analytic_value);
    out += ',';
    if (r.mc_value) out += format_number(*r.mc_value);
    out += ',';
    if (r.mc_halfwidth) out += format_number(*r.mc_halfwidth);
    out += ',';
    out += std::to_string(r.seed);
    out += '\n';
  }
  return out;
}

std::string format_svg(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  constexpr double kWidth = 760, kHeight = 480;
  constexpr double kLeft = 70, kRight = 190, kTop = 30, kBottom = 55;
  static constexpr std::array<const char*, 8> kColors = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                         "#9467bd", "#8c564b", "#e377c2", "#17becf"};

  double x_lo = spec.grid.front(), x_hi = spec.grid.back();
  double y_lo = INFINITY, y_hi = -INFINITY;
  for (const SweepRow& r : rows) {
    for (const double v : {r.analytic_value, r.mc_value.value_or(r.analytic_value)}) {
      if (!std::isfinite(v)) continue;
      y_lo = std::min(y_lo, v);
      y_hi = std::max(y_hi, v);
    }
  }
  if (!(y_hi > y_lo)) {
    y_lo = std::isfinite(y_lo) ? y_lo - 0.5 : 0.0;
    y_hi = y_lo + 1.0;
  }
  if (!(x_hi > x_lo)) x_hi = x_lo + 1.0;
  const double pad = 0.05 * (y_hi - y_lo);
  y_lo -= pad;
  y_hi += pad;

  auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * (kWidth - kLeft - kRight); };
  auto py = [&](double y) { return kHeight - kBottom - (y - y_lo) / (y_hi - y_lo) * (kHeight - kTop - kBottom); };
  auto num = [](double v) { return format_number(std::round(v * 100.0) / 100.0); };

  std::map<std::string, std::vector<const SweepRow*>> by_series;
  for (const SweepRow& r : rows) by_series[r.strategy].push_back(&r);

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << kWidth - kRight << "\" y2=\""
    << kHeight - kBottom << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kHeight - kBottom
    << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x_lo + (x_hi - x_lo) * i / 4.0;
    const double yv = y_lo + (y_hi - y_lo) * i / 4.0;
    s << "<text x=\"" << num(px(xv)) << "\" y=\"" << kHeight - kBottom + 18 << "\" text-anchor=\"middle\">"
      << format_number(std::round(xv * 1000.0) / 1000.0) << "</text>\n";
    s << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(py(yv) + 4) << "\" text-anchor=\"end\">"
      << format_number(std::round(yv * 1000.0) / 1000.0) << "</text>\n";
  }
  s << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">"
    << to_string(spec.variable) << "</text>\n";
  s << "<text x=\"16\" y=\"" << (kTop + kHeight - kBottom) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << (kTop + kHeight - kBottom) / 2 << ")\">" << to_string(spec.metric) << "</text>\n";

  std::size_t color = 0;
  for (const auto& [label, pts] : by_series) {
    const char* c = kColors[color % kColors.size()];
    s << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\" points=\"";
    for (const SweepRow* r : pts)
      if (std::isfinite(r->analytic_value)) s << num(px(r->swept_value)) << ',' << num(py(r->analytic_value)) << ' ';
    s << "\"/>\n";
    for (const SweepRow* r : pts)
      if (r->mc_value && std::isfinite(*r->mc_value))
        s << "<circle cx=\"" << num(px(r->swept_value)) << "\" cy=\"" << num(py(*r->mc_value)) << "\" r=\"2.5\" fill=\""
          << c << "\"/>\n";
    const double ly = kTop + 18.0 * static_cast<double>(color);
    s << "<line x1=\"" << kWidth - kRight + 12 << "\" y1=\"" << ly << "\" x2=\"" << kWidth - kRight + 36 << "\" y2=\""
      << ly << "\" stroke=\"" << c << "\" stroke-width=\"2\"/>\n";
    s << "<text x=\"" << kWidth - kRight + 42 << "\" y=\"" << ly + 4 << "\">" << label << "</text>\n";
    ++color;
  }
  s << "</svg>\n";
  return s.str();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

SweepSummary run_sweep(const RunConfig& config, const std::filesystem::path& out_dir) {
  const SweepSpec spec = make_sweep_spec(config);
  const std::vector<SweepRow> rows = run_sweep_rows(spec, config);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + out_dir.string() + "': " + ec.message());

  RunConfig resolved = config;
  resolved.vary = spec.variable;
  resolved.metric = spec.metric;
  resolved.grid = spec.grid;
  resolved.grid_overridden = true;

  SweepSummary summary;
  summary.rows = rows.size();
  summary.csv = out_dir / (spec.preset + ".csv");
  summary.manifest = out_dir / "manifest.txt";
  write_file(summary.csv, format_csv(rows));
  if (config.write_svg) {
    summary.svg = out_dir / (spec.preset + ".svg");
    write_file(*summary.svg, format_svg(spec, rows));
  }
  write_file(summary.manifest, format_manifest(resolved));
  return summary;
}

}  // namespace d2dcache
