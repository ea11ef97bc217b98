#include "modwave/report.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace modwave {

CheckItem within(std::string name, double value, double lo, double hi) {
  return CheckItem{std::move(name), value, lo, hi, !std::isnan(value) && value >= lo && value <= hi};
}

CheckItem at_most(std::string name, double value, double hi) { return within(std::move(name), value, -INFINITY, hi); }

CheckItem at_least(std::string name, double value, double lo) { return within(std::move(name), value, lo, INFINITY); }

bool Check::passed() const {
  for (const auto& item : items) {
    if (!item.passed) return false;
  }
  return true;
}

std::string Check::summary() const {
  std::ostringstream os;
  os << std::setprecision(4);
  const bool all = passed();
  bool first = true;
  for (const auto& item : items) {
    if (!all && item.passed) continue;
    if (!first) os << "; ";
    first = false;
    os << item.name << '=' << item.value;
    if (std::isfinite(item.lo) && std::isfinite(item.hi)) {
      os << " (in [" << item.lo << ", " << item.hi << "])";
    } else if (std::isfinite(item.hi)) {
      os << " (<= " << item.hi << ')';
    } else if (std::isfinite(item.lo)) {
      os << " (>= " << item.lo << ')';
    }
  }
  return os.str();
}

bool CampaignResult::passed() const {
  for (const auto& c : checks) {
    if (!c.passed()) return false;
  }
  return true;
}

namespace {

nlohmann::json number(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

nlohmann::json numbers(const std::vector<double>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

}  // namespace

nlohmann::json to_json(const CheckItem& item) {
  nlohmann::json j{{"name", item.name}, {"value", number(item.value)}, {"passed", item.passed}};
  if (std::isfinite(item.lo)) j["min"] = item.lo;
  if (std::isfinite(item.hi)) j["max"] = item.hi;
  return j;
}

nlohmann::json to_json(const Check& check) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& item : check.items) items.push_back(to_json(item));
  nlohmann::json j{{"name", check.name}, {"passed", check.passed()}, {"items", items}};
  if (check.criterion > 0) j["criterion"] = check.criterion;
  return j;
}

nlohmann::json to_json(const DecayFit& fit) {
  return {{"slope", number(fit.slope)},
          {"intercept", number(fit.intercept)},
          {"r_squared", number(fit.r_squared)},
          {"n_points", fit.n_points},
          {"log_correction_power", fit.log_correction_power}};
}

nlohmann::json to_json(const NormBundle& n) {
  return {{"linf", number(n.linf)}, {"l2", number(n.l2)}, {"dxi_l2", number(n.dxi_l2)}, {"h2", number(n.h2)}};
}

nlohmann::json to_json(const PicardReport& r) {
  return {{"iterates", r.iterates},
          {"xt_norms", numbers(r.xt_norms)},
          {"step_distances", numbers(r.step_distances)},
          {"contraction_ratios", numbers(r.contraction_ratios)},
          {"converged", r.converged},
          {"tail_estimate", number(r.tail_estimate)},
          {"fixed_point_residual", number(r.fixed_point_residual)},
          {"phi_eps_norm", number(r.phi_eps_norm)}};
}

nlohmann::json to_json(const ExperimentConfig& c) {
  const SolverParams& p = c.params;
  return {{"subcommand", std::string(to_string(c.subcommand))},
          {"lambda", sign_of(p.lambda)},
          {"delta", p.delta},
          {"alpha", p.alpha},
          {"eps0", p.eps0},
          {"T", p.T},
          {"t_max", p.t_max},
          {"num_points", c.num_points},
          {"box_length", c.box_length},
          {"time_grid_points", p.time_grid_points},
          {"data_kind", std::string(to_string(c.data_kind))},
          {"seed", c.seed},
          {"fit_window", {c.fit_t_min, c.fit_t_max}},
          {"max_iter", c.max_iter},
          {"tol", c.tol},
          {"dt_cap", c.dt_cap},
          {"samples_per_decade", c.samples_per_decade},
          {"mc_profiles", c.mc_profiles},
          {"sweep_eps0", c.sweep_eps0}};
}

nlohmann::json results_json(const CampaignResult& result, const ExperimentConfig& config, const std::string& timestamp) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : result.checks) checks.push_back(to_json(c));
  nlohmann::json diagnostics = nlohmann::json::array();
  for (const auto& c : result.diagnostics) diagnostics.push_back(to_json(c));
  nlohmann::json files = nlohmann::json::array();
  for (const auto& t : result.tables) files.push_back(t.file);
  return {{"schema_version", kSchemaVersion},
          {"campaign", result.campaign},
          {"timestamp", timestamp},
          {"passed", result.passed()},
          {"config", to_json(config)},
          {"checks", checks},
          {"diagnostics", diagnostics},
          {"summary", result.summary},
          {"csv_files", files}};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream os(path);
  if (!os) throw InvalidArgument("cannot write " + path.string());
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
  os << '\n' << std::setprecision(17);
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
}

void write_outputs(const std::filesystem::path& dir, const CampaignResult& result, const ExperimentConfig& config) {
  std::filesystem::create_directories(dir);
  for (const auto& t : result.tables) write_csv(dir / t.file, t);
  std::ofstream os(dir / "results.json");
  if (!os) throw InvalidArgument("cannot write " + (dir / "results.json").string());
  os << results_json(result, config, utc_timestamp()).dump(2) << '\n';
}

}  // namespace modwave
