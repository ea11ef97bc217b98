#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "modwave/campaigns.hpp"

namespace {

enum ExitCode { kPass = 0, kCheckFailure = 1, kRuntimeError = 2 };

// Runtime failures still leave a results.json behind when the output directory is usable.
void write_error(const modwave::ExperimentConfig* config, const std::filesystem::path& dir, const std::string& kind,
                 const std::string& what) {
  nlohmann::json j{{"schema_version", modwave::kSchemaVersion},
                   {"passed", false},
                   {"timestamp", modwave::utc_timestamp()},
                   {"error", {{"kind", kind}, {"message", what}}}};
  if (config) {
    j["campaign"] = std::string(modwave::to_string(config->subcommand));
    j["config"] = modwave::to_json(*config);
  }
  std::cerr << nlohmann::json{{"error", {{"kind", kind}, {"message", what}}}}.dump() << "\n";
  if (dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::ofstream out(dir / "results.json");
  if (out) out << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Final-state construction and verification campaigns for the cubic NLS on the line"};
  app.require_subcommand(1, 1);
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  for (const char* name : {"verify-spectral", "verify-dispersive", "verify-forcing", "construct", "roundtrip", "sweep"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "key = value configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (overrides output_dir)");
    sub->add_option("--seed", seed, "seed for the final data and random probes (overrides seed)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kRuntimeError;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  modwave::ExperimentConfig config;
  try {
    config = modwave::load_config(config_path);
  } catch (const modwave::ConfigError& e) {
    write_error(nullptr, out_dir, "config", e.what());
    return kRuntimeError;
  } catch (const std::exception& e) {
    write_error(nullptr, out_dir, "io", e.what());
    return kRuntimeError;
  }
  config.subcommand = modwave::parse_subcommand(name);
  if (!out_dir.empty()) config.output_dir = out_dir;
  if (app.get_subcommands().front()->count("--seed") > 0) config.seed = seed;

  try {
    const modwave::CampaignResult result = modwave::run_campaign(config);
    modwave::write_outputs(config.output_dir, result, config);
    for (const modwave::Check& c : result.checks) {
      std::cout << (c.passed() ? "PASS " : "FAIL ") << c.name << "  " << c.summary() << "\n";
    }
    for (const modwave::Check& c : result.diagnostics) {
      std::cout << (c.passed() ? "  ok " : "  -- ") << c.name << "  " << c.summary() << "\n";
    }
    std::cout << "results: " << (config.output_dir / "results.json").string() << "\n";
    if (!result.passed()) {
      std::string failed;
      for (const modwave::Check& c : result.checks) {
        if (!c.passed()) failed += (failed.empty() ? "" : ",") + c.name;
      }
      std::cerr << nlohmann::json{{"error", {{"kind", "check_failure"}, {"failed", failed}}}}.dump() << "\n";
      return kCheckFailure;
    }
    return kPass;
  } catch (const modwave::NumericalError& e) {
    write_error(&config, config.output_dir, "numerical", e.what());
  } catch (const std::exception& e) {
    write_error(&config, config.output_dir, "runtime", e.what());
  }
  return kRuntimeError;
}
