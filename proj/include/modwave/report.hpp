#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "modwave/config.hpp"
#include "modwave/fit.hpp"
#include "modwave/fixedpoint.hpp"

namespace modwave {

inline constexpr const char* kSchemaVersion = "1.0";

/// One measured number against an interval [lo, hi] (either end may be open).
struct CheckItem {
  std::string name;
  double value = 0.0;
  double lo = -INFINITY;
  double hi = INFINITY;
  bool passed = false;
};

CheckItem at_most(std::string name, double value, double hi);
CheckItem at_least(std::string name, double value, double lo);
CheckItem within(std::string name, double value, double lo, double hi);

struct Check {
  std::string name;   ///< e.g. "C7_contraction"; diagnostics use plain names
  int criterion = 0;  ///< 1..10, 0 for diagnostics
  std::vector<CheckItem> items;
  bool passed() const;
  /// "name=value (<= hi)" for the failing items, or all items when none fail.
  std::string summary() const;
};

struct CsvTable {
  std::string file;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct CampaignResult {
  std::string campaign;
  std::vector<Check> checks;       ///< acceptance criteria; decide the exit code
  std::vector<Check> diagnostics;  ///< further properties, reported only
  nlohmann::json summary = nlohmann::json::object();
  std::vector<CsvTable> tables;
  bool passed() const;
};

nlohmann::json to_json(const CheckItem& item);
nlohmann::json to_json(const Check& check);
nlohmann::json to_json(const DecayFit& fit);
nlohmann::json to_json(const NormBundle& n);
nlohmann::json to_json(const PicardReport& report);
nlohmann::json to_json(const ExperimentConfig& config);

/// Full results.json document; `timestamp` is the only non-deterministic field.
nlohmann::json results_json(const CampaignResult& result, const ExperimentConfig& config, const std::string& timestamp);

std::string utc_timestamp();

void write_csv(const std::filesystem::path& path, const CsvTable& table);

/// results.json plus every CSV table into `dir` (created if needed).
void write_outputs(const std::filesystem::path& dir, const CampaignResult& result, const ExperimentConfig& config);

}  // namespace modwave
