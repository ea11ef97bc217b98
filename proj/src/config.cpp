#include "modwave/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

namespace modwave {

Subcommand parse_subcommand(std::string_view name) {
  if (name == "verify-spectral") return Subcommand::verify_spectral;
  if (name == "verify-dispersive") return Subcommand::verify_dispersive;
  if (name == "verify-forcing") return Subcommand::verify_forcing;
  if (name == "construct") return Subcommand::construct;
  if (name == "roundtrip") return Subcommand::roundtrip;
  if (name == "sweep") return Subcommand::sweep;
  throw InvalidArgument("unknown subcommand '" + std::string(name) + "'");
}

std::string_view to_string(Subcommand sub) {
  switch (sub) {
    case Subcommand::verify_spectral: return "verify-spectral";
    case Subcommand::verify_dispersive: return "verify-dispersive";
    case Subcommand::verify_forcing: return "verify-forcing";
    case Subcommand::construct: return "construct";
    case Subcommand::roundtrip: return "roundtrip";
    case Subcommand::sweep: return "sweep";
  }
  return "?";
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(std::string_view v, int line, std::string_view key) {
  double out = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError(line, "'" + std::string(key) + "' expects a number, got '" + std::string(v) + "'");
  }
  return out;
}

long long to_integer(std::string_view v, int line, std::string_view key) {
  if (!v.empty() && v.front() == '+') v.remove_prefix(1);
  long long out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ConfigError(line, "'" + std::string(key) + "' expects an integer, got '" + std::string(v) + "'");
  }
  return out;
}

void check(bool ok, int line, const std::string& what) {
  if (!ok) throw ConfigError(line, what);
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  SolverParams& p = c.params;
  std::map<std::string, int> seen;
  std::optional<int> time_grid_points;

  using Setter = std::function<void(std::string_view, int)>;
  const std::map<std::string, Setter, std::less<>> setters{
      {"lambda", [&](std::string_view v, int l) {
         const long long s = to_integer(v, l, "lambda");
         check(s == 1 || s == -1, l, "lambda must be +1 (defocusing) or -1 (focusing)");
         p.lambda = nonlinearity_from_sign(static_cast<int>(s));
       }},
      {"delta", [&](std::string_view v, int l) { p.delta = to_double(v, l, "delta"); }},
      {"alpha", [&](std::string_view v, int l) { p.alpha = to_double(v, l, "alpha"); }},
      {"eps0", [&](std::string_view v, int l) { p.eps0 = to_double(v, l, "eps0"); }},
      {"T", [&](std::string_view v, int l) { p.T = to_double(v, l, "T"); }},
      {"t_max", [&](std::string_view v, int l) { p.t_max = to_double(v, l, "t_max"); }},
      {"num_points", [&](std::string_view v, int l) { c.num_points = static_cast<std::size_t>(to_integer(v, l, "num_points")); }},
      {"box_length", [&](std::string_view v, int l) { c.box_length = to_double(v, l, "box_length"); }},
      {"time_grid_points", [&](std::string_view v, int l) { time_grid_points = static_cast<int>(to_integer(v, l, "time_grid_points")); }},
      {"nodes_per_decade", [&](std::string_view v, int l) { c.nodes_per_decade = static_cast<int>(to_integer(v, l, "nodes_per_decade")); }},
      {"data_kind", [&](std::string_view v, int l) {
         try {
           c.data_kind = parse_data_kind(v);
         } catch (const InvalidArgument& e) {
           throw ConfigError(l, e.what());
         }
       }},
      {"seed", [&](std::string_view v, int l) { c.seed = static_cast<std::uint64_t>(to_integer(v, l, "seed")); }},
      {"output_dir", [&](std::string_view v, int) { c.output_dir = std::string(v); }},
      {"fit_t_min", [&](std::string_view v, int l) { c.fit_t_min = to_double(v, l, "fit_t_min"); }},
      {"fit_t_max", [&](std::string_view v, int l) { c.fit_t_max = to_double(v, l, "fit_t_max"); }},
      {"max_iter", [&](std::string_view v, int l) { c.max_iter = static_cast<int>(to_integer(v, l, "max_iter")); }},
      {"tol", [&](std::string_view v, int l) { c.tol = to_double(v, l, "tol"); }},
      {"dt_cap", [&](std::string_view v, int l) { c.dt_cap = to_double(v, l, "dt_cap"); }},
      {"samples_per_decade", [&](std::string_view v, int l) { c.samples_per_decade = static_cast<int>(to_integer(v, l, "samples_per_decade")); }},
      {"mc_profiles", [&](std::string_view v, int l) { c.mc_profiles = static_cast<int>(to_integer(v, l, "mc_profiles")); }},
      {"sweep_eps0", [&](std::string_view v, int l) {
         c.sweep_eps0.clear();
         std::size_t start = 0;
         while (start <= v.size()) {
           const auto comma = v.find(',', start);
           const auto item = trim(v.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
           c.sweep_eps0.push_back(to_double(item, l, "sweep_eps0"));
           if (comma == std::string_view::npos) break;
           start = comma + 1;
         }
       }},
  };

  int line_no = 0;
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
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(line_no, "unknown key '" + key + "'");
    if (value.empty()) throw ConfigError(line_no, "missing value for '" + key + "'");
    if (seen.count(key) != 0) throw ConfigError(line_no, "duplicate key '" + key + "'");
    seen[key] = line_no;
    it->second(value, line_no);
  }

  auto where = [&](std::initializer_list<const char*> keys) {
    int l = 0;
    for (const char* k : keys) {
      if (auto it = seen.find(k); it != seen.end()) l = std::max(l, it->second);
    }
    return l;
  };

  check(p.delta > 0.0 && p.delta < 0.25, where({"delta"}), "parameter constraint violated: need 0 < delta < 1/4");
  check(p.alpha > 0.0 && p.alpha < p.delta, where({"alpha", "delta"}),
        "parameter constraint violated: need 0 < alpha < delta");
  check(p.eps0 >= 0.0, where({"eps0"}), "eps0 must be >= 0");
  check(p.T >= 2.0, where({"T"}), "T must be >= 2");
  check(p.t_max >= 10.0 * p.T, where({"t_max", "T"}), "t_max must be >= 10 T");
  check(c.nodes_per_decade >= 2, where({"nodes_per_decade"}), "nodes_per_decade must be >= 2");
  p.time_grid_points = time_grid_points.value_or(
      static_cast<int>(std::lround(c.nodes_per_decade * std::log10(p.t_max / p.T))) + 1);
  check(p.time_grid_points >= 3, where({"time_grid_points"}), "time_grid_points must be >= 3");
  check(c.fit_t_min >= p.T * (1 - 1e-12) && c.fit_t_max <= p.t_max * (1 + 1e-12) && c.fit_t_min < c.fit_t_max,
        where({"fit_t_min", "fit_t_max", "T", "t_max"}), "fit window must lie inside [T, t_max]");
  check(c.max_iter >= 1, where({"max_iter"}), "max_iter must be >= 1");
  check(c.tol > 0.0, where({"tol"}), "tol must be > 0");
  check(c.dt_cap > 0.0, where({"dt_cap"}), "dt_cap must be > 0");
  check(c.samples_per_decade >= 2, where({"samples_per_decade"}), "samples_per_decade must be >= 2");
  check(c.mc_profiles >= 1, where({"mc_profiles"}), "mc_profiles must be >= 1");
  for (double e : c.sweep_eps0) check(e >= 0.0, where({"sweep_eps0"}), "sweep_eps0 entries must be >= 0");
  try {
    p.grid = SpectralGrid::make(c.num_points, c.box_length);
  } catch (const InvalidArgument& e) {
    throw ConfigError(where({"num_points", "box_length"}), e.what());
  }
  // The final data reach |x| = t * support; the box must hold them up to t_max.
  constexpr double kSupport = 4.0;
  try {
    require_coverage(*p.grid, kSupport, p.t_max);
  } catch (const InvalidArgument& e) {
    throw ConfigError(where({"box_length", "t_max"}), e.what());
  }
  check(kSupport <= 0.8 * p.grid->xi_max(), where({"num_points", "box_length"}),
        "frequency grid too coarse: final data need |xi| <= 4 inside 80% of xi_max = pi num_points / box_length");
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace modwave
