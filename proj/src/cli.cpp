#include "d2dcache/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>

#include "d2dcache/analytic.hpp"
#include "d2dcache/config.hpp"
#include "d2dcache/montecarlo.hpp"
#include "d2dcache/optimize.hpp"
#include "d2dcache/sweep.hpp"

namespace d2dcache {

namespace {

void print_estimate(std::ostream& out, const char* name, const Estimate& e) {
  out << name << " = " << format_number(e.mean) << '\n';
  out << name << "_halfwidth = " << format_number(e.half_width) << (e.degenerate ? "  # single trial" : "") << '\n';
}

int run_analytic(const RunConfig& config, const std::string& cache, const std::string& series, std::ostream& out) {
  const ZipfCatalog catalog(config.files, config.gamma);
  const CacheStrategy strategy = resolve_strategy(cache, config.network, catalog);
  const std::size_t pool = strategy.pool(config.network.cache_capacity, config.files);
  const SeriesForm form = series == "truncated" ? SeriesForm::Truncated : SeriesForm::Closed;
  const AnalyticReport r = evaluate(config.network, catalog, pool, form);
  out << "strategy = " << cache << '\n';
  out << "pool = " << r.pool << '\n';
  out << "head_intensity = " << format_number(head_intensity(config.network)) << '\n';
  out << "member_intensity = " << format_number(member_intensity(config.network)) << '\n';
  out << "hit_prob = " << format_number(r.hit_prob) << '\n';
  out << "d2d_service_prob = " << format_number(r.d2d_service_prob) << '\n';
  out << "active_heads = " << format_number(r.active_heads) << '\n';
  out << "ec_ratio = " << format_number(r.ec_ratio) << '\n';
  return 0;
}

int run_simulate(const RunConfig& config, const std::string& cache, std::ostream& out) {
  if (config.trials < 1) throw ConfigError("trials", "simulate needs at least one trial");
  const ZipfCatalog catalog(config.files, config.gamma);
  const CacheStrategy strategy = resolve_strategy(cache, config.network, catalog);
  const SimResult r = simulate(config.network, catalog, config.sim_config(strategy));
  out << "strategy = " << cache << '\n';
  out << "cache = " << strategy.name() << '\n';
  out << "region = " << to_string(config.region) << '\n';
  out << "seed = " << config.seed << '\n';
  out << "samples = " << r.samples << '\n';
  print_estimate(out, "hit_rate", r.hit_rate);
  print_estimate(out, "active_heads", r.active_heads);
  print_estimate(out, "ec_ratio", r.ec_ratio);
  return 0;
}

int run_optimize(const RunConfig& config, const std::string& strategy, const std::optional<std::string>& objective,
                 bool trace, const std::optional<std::filesystem::path>& out_dir, std::ostream& out) {
  const ZipfCatalog catalog(config.files, config.gamma);
  OptimizationResult r;
  if (strategy == "lhp") {
    if (objective && *objective != "max")
      throw ConfigError("objective", "lhp maximizes hit probability; only 'max' applies");
    r = optimize_lhp(config.network, catalog);
  } else {
    const Direction dir = objective && *objective == "max" ? Direction::Maximize : Direction::Minimize;
    r = optimize_lec(config.network, catalog, dir);
  }
  out << "strategy = " << strategy << '\n';
  out << "best_pool = " << r.best_pool << '\n';
  out << (r.objective == Objective::HitProb ? "hit_prob" : "ec_ratio") << " = " << format_number(r.objective_value)
      << '\n';

  std::string csv = "pool,objective\n";
  for (const auto& [pool, value] : r.trace) csv += std::to_string(pool) + ',' + format_number(value) + '\n';
  if (trace) out << csv;
  if (out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir->string() + "': " + ec.message());
    const auto path = *out_dir / ("optimize_" + strategy + ".csv");
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!(f << csv)) throw IoError("failed writing '" + path.string() + "'");
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cache-enabled multicast D2D model: analytic evaluation, optimization, Monte Carlo and sweeps",
               "d2dcache"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir;
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--out", out_dir, "output directory (sweep; optimize writes its scan trace here)");

  std::map<std::string, std::string> flag_values;
  std::map<std::string, CLI::Option*> flag_options;
  for (const SettingInfo& info : setting_keys()) {
    const std::string key(info.key);
    flag_options[key] = app.add_option("--" + key, flag_values[key], std::string(info.help));
  }

  std::string cache = "lec";
  std::string series = "closed";
  auto* analytic = app.add_subcommand("analytic", "closed-form report at one cached-pool size");
  analytic->add_option("--cache", cache, "lhp|lec|eprc|mpc|top:<m> (default lec)");
  analytic->add_option("--series", series, "closed|truncated (default closed)")
      ->check(CLI::IsMember({"closed", "truncated"}));

  auto* simulate_cmd = app.add_subcommand("simulate", "spatial Monte Carlo estimate at one point");
  simulate_cmd->add_option("--cache", cache, "lhp|lec|eprc|mpc|top:<m> (default lec)");

  std::string strategy;
  std::string objective;
  bool trace = false;
  auto* optimize_cmd = app.add_subcommand("optimize", "optimal number of cached files");
  optimize_cmd->add_option("--strategy", strategy, "lhp|lec")->required()->check(CLI::IsMember({"lhp", "lec"}));
  auto* objective_opt = optimize_cmd->add_option("--objective", objective, "min|max (lec default min)")
                            ->check(CLI::IsMember({"min", "max"}));
  optimize_cmd->add_flag("--trace", trace, "print the full scan as CSV");

  auto* sweep_cmd = app.add_subcommand("sweep", "figure-data sweep: writes CSV, optional SVG and a manifest");

  std::string setting_help = "\nConfiguration keys (file syntax 'key = value', '#' comments; flags override file):\n";
  for (const SettingInfo& info : setting_keys())
    setting_help += "  " + std::string(info.key) + ": " + std::string(info.help) + "\n";
  app.footer(setting_help + "\nExit codes: 0 success, 1 usage/validation error, 2 runtime/I-O error.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    Settings settings;
    if (!config_path.empty()) settings = read_config_file(config_path);
    for (const auto& [key, opt] : flag_options)
      if (opt->count() > 0) settings[key] = flag_values[key];
    const RunConfig config = resolve_config(settings);
    const std::optional<std::filesystem::path> out_path =
        out_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(out_dir);

    if (analytic->parsed()) return run_analytic(config, cache, series, out);
    if (simulate_cmd->parsed()) return run_simulate(config, cache, out);
    if (optimize_cmd->parsed())
      return run_optimize(config, strategy, objective_opt->count() ? std::optional(objective) : std::nullopt, trace,
                          out_path, out);
    if (sweep_cmd->parsed()) {
      if (!out_path) throw ConfigError("out", "sweep needs an output directory");
      const SweepSummary s = run_sweep(config, *out_path);
      out << "rows = " << s.rows << '\n';
      out << "csv = " << s.csv.string() << '\n';
      if (s.svg) out << "svg = " << s.svg->string() << '\n';
      out << "manifest = " << s.manifest.string() << '\n';
      return 0;
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {  // includes ConfigError
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace d2dcache
