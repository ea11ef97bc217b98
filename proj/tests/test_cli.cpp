#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>

#include "modwave/campaigns.hpp"

using namespace modwave;

TEST_CASE("empty config gives the documented defaults") {
  const ExperimentConfig c = parse_config("");
  CHECK(c.params.lambda == Nonlinearity::defocusing);
  CHECK(c.params.delta == 0.2);
  CHECK(c.params.alpha == 0.1);
  CHECK(c.params.eps0 == 0.05);
  CHECK(c.params.T == 10.0);
  CHECK(c.params.t_max == 1000.0);
  CHECK(c.params.grid != nullptr);
}

TEST_CASE("parameter constraints are reported with their line") {
  try {
    parse_config("alpha = 0.3\ndelta = 0.2\n");
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("0 < alpha < delta") != std::string::npos);
  }
  try {
    parse_config("# comment\ndelta = 0.25\n");
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("delta < 1/4") != std::string::npos);
  }
}

TEST_CASE("unknown, duplicate and malformed keys are hard errors") {
  CHECK_THROWS_AS(parse_config("colour = red\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("eps0 = 0.1\neps0 = 0.2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("eps0 = abc\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("eps0\n"), ConfigError);
  CHECK_NOTHROW(parse_config("  eps0 = 0.1   # trailing comment\n\n"));
}

TEST_CASE("fit_decay on synthetic power laws") {
  std::vector<std::pair<double, double>> exact, corrected, flat;
  for (double t : log_times(10.0, 1000.0, 8)) {
    exact.emplace_back(t, std::pow(t, -1.25));
    corrected.emplace_back(t, std::pow(t, -1.2) * std::pow(1.0 + std::log(t), 6));
    flat.emplace_back(t, 3.0);
  }
  const DecayFit a = fit_decay(exact);
  CHECK(a.slope == doctest::Approx(-1.25).epsilon(1e-12));
  CHECK(a.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit_decay(corrected, 6).slope == doctest::Approx(-1.2).epsilon(1e-10));
  CHECK(std::abs(fit_decay(flat).slope) < 1e-12);
  exact[3].second = 0.0;
  CHECK_THROWS(fit_decay(exact));
}

namespace {

ExperimentConfig small_config(Subcommand sub) {
  ExperimentConfig c = parse_config(
      "num_points = 2048\nbox_length = 1024\nt_max = 100\nnodes_per_decade = 32\n"
      "fit_t_min = 10\nfit_t_max = 100\n");
  c.subcommand = sub;
  return c;
}

}  // namespace

TEST_CASE("construct with zero amplitude converges trivially") {
  ExperimentConfig c = small_config(Subcommand::construct);
  c.params.eps0 = 0.0;
  const CampaignResult r = run_campaign(c);
  CHECK(r.passed());
  for (const CsvTable& t : r.tables) {
    if (t.file != "g_star.csv") continue;
    for (const auto& row : t.rows) {
      for (std::size_t k = 1; k < row.size(); ++k) CHECK(row[k] == 0.0);
    }
  }
}

TEST_CASE("results are deterministic apart from the timestamp") {
  const ExperimentConfig c = small_config(Subcommand::construct);
  const nlohmann::json a = results_json(run_campaign(c), c, "fixed");
  const nlohmann::json b = results_json(run_campaign(c), c, "fixed");
  CHECK(a.dump() == b.dump());
  CHECK(a["schema_version"] == kSchemaVersion);
  CHECK(a["checks"][0]["name"] == "C7_contraction");
}

TEST_CASE("sweep does not depend on the worker count") {
  ExperimentConfig c = small_config(Subcommand::sweep);
  c.sweep_eps0 = {0.02, 0.08};
  setenv("MODWAVE_THREADS", "1", 1);
  const nlohmann::json a = run_campaign(c).summary;
  setenv("MODWAVE_THREADS", "3", 1);
  const nlohmann::json b = run_campaign(c).summary;
  unsetenv("MODWAVE_THREADS");
  CHECK(a.dump() == b.dump());
  CHECK(a["cells"].size() == 4);
}

TEST_CASE("outputs land in the output directory") {
  const ExperimentConfig c = small_config(Subcommand::verify_spectral);
  const auto dir = std::filesystem::temp_directory_path() / "modwave_test_cli_out";
  std::filesystem::remove_all(dir);
  write_outputs(dir, run_campaign(c), c);
  std::ifstream in(dir / "results.json");
  const nlohmann::json j = nlohmann::json::parse(in);
  CHECK(j["campaign"] == "verify-spectral");
  CHECK(j["checks"][0]["passed"] == true);
  CHECK(std::filesystem::exists(dir / "spectral.csv"));
  std::filesystem::remove_all(dir);
}
