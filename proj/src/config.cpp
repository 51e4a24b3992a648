#include "d2dcache/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace d2dcache {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool known_key(std::string_view key) {
  const auto& keys = setting_keys();
  return std::any_of(keys.begin(), keys.end(), [&](const SettingInfo& k) { return k.key == key; });
}

double parse_real(const std::string& key, std::string_view text) {
  double value = 0.0;
  text = trim(text);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() || !std::isfinite(value))
    throw ConfigError(key, "expected a finite number, got '" + std::string(text) + "'");
  return value;
}

std::uint64_t parse_unsigned(const std::string& key, std::string_view text) {
  std::uint64_t value = 0;
  text = trim(text);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ConfigError(key, "expected a non-negative integer, got '" + std::string(text) + "'");
  return value;
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> parts;
  text = trim(text);
  if (text.empty()) return parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    parts.push_back(trim(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

template <typename Enum>
Enum parse_choice(const std::string& key, const std::string& text,
                  std::initializer_list<std::pair<std::string_view, Enum>> choices) {
  std::string allowed;
  for (const auto& [name, value] : choices) {
    if (text == name) return value;
    allowed += (allowed.empty() ? "" : ", ") + std::string(name);
  }
  throw ConfigError(key, "expected one of " + allowed + ", got '" + text + "'");
}

void check_strategy(const std::string& key, const std::string& name) {
  if (name == "lhp" || name == "lec" || name == "pool") return;
  try {
    (void)CacheStrategy::parse(name);
  } catch (const std::invalid_argument&) {
    throw ConfigError(key, "unknown strategy '" + name + "' (expected lhp, lec, eprc, mpc or top:<m>)");
  }
}

}  // namespace

const std::vector<SettingInfo>& setting_keys() {
  static const std::vector<SettingInfo> keys = {
      {"cell-radius", "cell radius R_C in meters (default 200)"},
      {"cluster-radius", "D2D cluster radius R_D in meters (default 50)"},
      {"files", "library size M (default 500)"},
      {"gamma", "Zipf exponent (default 1)"},
      {"omega-cache", "cache capacity per head, in files (default 10)"},
      {"heads", "number of cluster heads (default 100)"},
      {"members", "number of cluster members (default 250)"},
      {"energy-ratio", "D2D/cellular per-bit energy ratio omega (default 0.1)"},
      {"seed", "master random seed (default 1)"},
      {"region", "torus|disk (default torus)"},
      {"trials", "Monte Carlo deployments per point; 0 disables simulation in sweeps (default 400)"},
      {"requests", "request rounds per deployment (default 1)"},
      {"workers", "worker threads; never changes results (default 1)"},
      {"preset", "fig2|fig3|fig4|fig5|fig6|custom (default custom)"},
      {"vary", "custom sweep variable: pool|gamma|members"},
      {"metric", "custom sweep metric: hit|ec|optimal"},
      {"grid", "comma-separated, strictly increasing sweep values"},
      {"strategies", "custom sweep strategies: lhp,lec,eprc,mpc,top:<m>,pool"},
      {"format", "csv|csv+svg (default csv)"},
  };
  return keys;
}

SimConfig RunConfig::sim_config(const CacheStrategy& strategy) const {
  SimConfig sim;
  sim.trials = trials;
  sim.requests_per_trial = requests_per_trial;
  sim.region = region;
  sim.seed = seed;
  sim.strategy = strategy;
  sim.workers = workers;
  return sim;
}

Settings parse_config_text(std::string_view text) {
  Settings settings;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    if (!known_key(key)) throw ConfigError(key, "unknown configuration key");
    settings[key] = std::string(trim(line.substr(eq + 1)));
  }
  return settings;
}

Settings read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

RunConfig resolve_config(const Settings& settings) {
  RunConfig c;
  for (const auto& [key, value] : settings)
    if (!known_key(key)) throw ConfigError(key, "unknown configuration key");

  auto get = [&](const char* key) -> const std::string* {
    const auto it = settings.find(key);
    return it == settings.end() ? nullptr : &it->second;
  };

  if (auto v = get("cell-radius")) c.network.cell_radius = parse_real("cell-radius", *v);
  if (auto v = get("cluster-radius")) c.network.cluster_radius = parse_real("cluster-radius", *v);
  if (auto v = get("files")) c.files = parse_unsigned("files", *v);
  if (auto v = get("gamma")) c.gamma = parse_real("gamma", *v);
  if (auto v = get("omega-cache")) c.network.cache_capacity = parse_unsigned("omega-cache", *v);
  if (auto v = get("heads")) c.network.heads = parse_unsigned("heads", *v);
  if (auto v = get("members")) c.network.members = parse_unsigned("members", *v);
  if (auto v = get("energy-ratio")) c.network.energy_ratio = parse_real("energy-ratio", *v);
  if (auto v = get("seed")) c.seed = parse_unsigned("seed", *v);
  if (auto v = get("region"))
    c.region = parse_choice<RegionMode>("region", *v, {{"torus", RegionMode::Torus}, {"disk", RegionMode::Disk}});
  if (auto v = get("trials")) c.trials = parse_unsigned("trials", *v);
  if (auto v = get("requests")) c.requests_per_trial = parse_unsigned("requests", *v);
  if (auto v = get("workers")) c.workers = parse_unsigned("workers", *v);
  if (auto v = get("preset")) {
    static const std::vector<std::string> presets = {"fig2", "fig3", "fig4", "fig5", "fig6", "custom"};
    if (std::find(presets.begin(), presets.end(), *v) == presets.end())
      throw ConfigError("preset", "expected fig2..fig6 or custom, got '" + *v + "'");
    c.preset = *v;
  }
  if (auto v = get("vary"))
    c.vary = parse_choice<SweepVariable>(
        "vary", *v,
        {{"pool", SweepVariable::Pool}, {"gamma", SweepVariable::Gamma}, {"members", SweepVariable::Members}});
  if (auto v = get("metric"))
    c.metric = parse_choice<Metric>(
        "metric", *v, {{"hit", Metric::HitProb}, {"ec", Metric::EcRatio}, {"optimal", Metric::OptimalPool}});
  if (auto v = get("grid")) {
    c.grid.clear();
    c.grid_overridden = true;
    for (const auto part : split_list(*v)) c.grid.push_back(parse_real("grid", part));
  }
  if (auto v = get("strategies")) {
    c.strategies.clear();
    for (const auto part : split_list(*v)) {
      check_strategy("strategies", std::string(part));
      c.strategies.emplace_back(part);
    }
    if (c.strategies.empty()) throw ConfigError("strategies", "at least one strategy is required");
  }
  if (auto v = get("format")) c.write_svg = parse_choice<bool>("format", *v, {{"csv", false}, {"csv+svg", true}});

  // Range checks, each naming its key.
  if (!(c.network.cell_radius > 0.0)) throw ConfigError("cell-radius", "must be positive");
  if (!(c.network.cluster_radius > 0.0) || c.network.cluster_radius > c.network.cell_radius)
    throw ConfigError("cluster-radius", "must satisfy 0 < cluster-radius <= cell-radius");
  if (c.files < 1) throw ConfigError("files", "library must hold at least one file");
  if (c.gamma < 0.0) throw ConfigError("gamma", "must be non-negative");
  if (c.network.cache_capacity < 1) throw ConfigError("omega-cache", "must be at least 1");
  if (c.network.cache_capacity > c.files)
    throw ConfigError("omega-cache", "cache capacity " + std::to_string(c.network.cache_capacity) +
                                         " exceeds library size " + std::to_string(c.files) +
                                         " (requires omega-cache <= files)");
  if (c.network.energy_ratio < 0.0) throw ConfigError("energy-ratio", "must be non-negative");
  if (c.requests_per_trial < 1) throw ConfigError("requests", "must be at least 1");
  if (c.workers < 1) throw ConfigError("workers", "must be at least 1");
  if (c.grid_overridden) {
    if (c.grid.empty()) throw ConfigError("grid", "sweep grid is empty");
    for (std::size_t i = 1; i < c.grid.size(); ++i)
      if (!(c.grid[i] > c.grid[i - 1])) throw ConfigError("grid", "values must be strictly increasing");
  }
  return c;
}

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 9);
  return std::string(buf, ptr);
}

std::string format_exact(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string to_string(RegionMode mode) { return mode == RegionMode::Torus ? "torus" : "disk"; }

std::string to_string(SweepVariable variable) {
  switch (variable) {
    case SweepVariable::Pool: return "pool";
    case SweepVariable::Gamma: return "gamma";
    case SweepVariable::Members: return "members";
  }
  return {};
}

std::string to_string(Metric metric) {
  switch (metric) {
    case Metric::HitProb: return "hit";
    case Metric::EcRatio: return "ec";
    case Metric::OptimalPool: return "optimal";
  }
  return {};
}

std::string format_manifest(const RunConfig& c) {
  std::ostringstream out;
  out << "# d2dcache " << kVersion << " run manifest\n";
  out << "cell-radius = " << format_exact(c.network.cell_radius) << '\n';
  out << "cluster-radius = " << format_exact(c.network.cluster_radius) << '\n';
  out << "files = " << c.files << '\n';
  out << "gamma = " << format_exact(c.gamma) << '\n';
  out << "omega-cache = " << c.network.cache_capacity << '\n';
  out << "heads = " << c.network.heads << '\n';
  out << "members = " << c.network.members << '\n';
  out << "energy-ratio = " << format_exact(c.network.energy_ratio) << '\n';
  out << "seed = " << c.seed << '\n';
  out << "region = " << to_string(c.region) << '\n';
  out << "trials = " << c.trials << '\n';
  out << "requests = " << c.requests_per_trial << '\n';
  out << "workers = " << c.workers << '\n';
  out << "preset = " << c.preset << '\n';
  out << "vary = " << to_string(c.vary) << '\n';
  out << "metric = " << to_string(c.metric) << '\n';
  if (!c.grid.empty()) {
    out << "grid = ";
    for (std::size_t i = 0; i < c.grid.size(); ++i) out << (i ? "," : "") << format_exact(c.grid[i]);
    out << '\n';
  }
  out << "strategies = ";
  for (std::size_t i = 0; i < c.strategies.size(); ++i) out << (i ? "," : "") << c.strategies[i];
  out << '\n';
  out << "format = " << (c.write_svg ? "csv+svg" : "csv") << '\n';
  return out.str();
}

}  // namespace d2dcache
