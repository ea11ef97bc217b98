#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "modwave/profile.hpp"

namespace modwave {

enum class Subcommand { verify_spectral, verify_dispersive, verify_forcing, construct, roundtrip, sweep };

Subcommand parse_subcommand(std::string_view name);
std::string_view to_string(Subcommand sub);

struct ExperimentConfig {
  Subcommand subcommand = Subcommand::construct;
  SolverParams params;
  std::size_t num_points = 16384;
  double box_length = 8192.0;
  int nodes_per_decade = 64;
  DataKind data_kind = DataKind::gaussian;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = "modwave_out";
  double fit_t_min = 10.0;
  double fit_t_max = 1000.0;
  int max_iter = 15;
  double tol = 1e-9;
  double dt_cap = 0.1;
  int samples_per_decade = 16;  ///< output density of the forward evolution
  int mc_profiles = 100;        ///< random profiles per seed in the dispersive campaign
  std::vector<double> sweep_eps0{0.01, 0.05, 0.1, 0.2};
};

class ConfigError : public InvalidArgument {
 public:
  ConfigError(int line, const std::string& what)
      : InvalidArgument(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// `key = value` lines, '#' starts a comment. Unknown keys, malformed values
/// and violated parameter constraints are errors carrying the line number.
/// The grid is built and every constraint checked before returning.
ExperimentConfig parse_config(std::string_view text);

ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace modwave
