// Runs the verification campaigns at default settings and prints one line per
// acceptance criterion. Exit status is nonzero when any selected criterion fails.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <set>

#include "modwave/campaigns.hpp"

namespace {

constexpr modwave::Subcommand kCampaigns[] = {
    modwave::Subcommand::verify_spectral, modwave::Subcommand::verify_dispersive, modwave::Subcommand::verify_forcing,
    modwave::Subcommand::construct, modwave::Subcommand::roundtrip};

int criterion_number(const std::string& s) {
  const std::string digits = (!s.empty() && (s[0] == 'C' || s[0] == 'c')) ? s.substr(1) : s;
  const int n = std::stoi(digits);
  if (n < 1 || n > 10) throw std::out_of_range("criterion " + s);
  return n;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria C1..C10 at default settings"};
  std::vector<std::string> only;
  std::string out;
  app.add_option("--only", only, "criteria to run, e.g. C3 (repeatable)");
  app.add_option("--out", out, "write each campaign's results.json and CSVs below this directory");
  CLI11_PARSE(app, argc, argv);

  std::set<int> wanted;
  try {
    for (const auto& s : only) wanted.insert(criterion_number(s));
  } catch (const std::exception& e) {
    std::cerr << "bad --only value: " << e.what() << "\n";
    return 2;
  }
  if (wanted.empty()) {
    for (int n = 1; n <= 10; ++n) wanted.insert(n);
  }

  std::map<int, std::string> lines;
  bool all_passed = true;
  for (modwave::Subcommand sub : kCampaigns) {
    const std::vector<int> covered = modwave::criteria_of(sub);
    bool needed = false;
    for (int n : covered) needed = needed || wanted.count(n) > 0;
    if (!needed) continue;

    modwave::ExperimentConfig config = modwave::parse_config("");
    config.subcommand = sub;
    try {
      const modwave::CampaignResult result = modwave::run_campaign(config);
      if (!out.empty()) modwave::write_outputs(std::filesystem::path(out) / std::string(to_string(sub)), result, config);
      for (const modwave::Check& c : result.checks) {
        if (!wanted.count(c.criterion)) continue;
        lines[c.criterion] = std::string(c.passed() ? "PASS " : "FAIL ") + c.name + "  " + c.summary();
        all_passed = all_passed && c.passed();
      }
    } catch (const std::exception& e) {
      for (int n : covered) {
        if (wanted.count(n)) lines[n] = "FAIL C" + std::to_string(n) + "  error: " + e.what();
      }
      all_passed = false;
    }
  }
  for (const auto& [n, line] : lines) std::cout << line << "\n";
  return all_passed ? 0 : 1;
}
