#pragma once

#include <vector>

#include "modwave/report.hpp"

namespace modwave {

CampaignResult run_verify_spectral(const ExperimentConfig& config);
CampaignResult run_verify_dispersive(const ExperimentConfig& config);
CampaignResult run_verify_forcing(const ExperimentConfig& config);
CampaignResult run_construct(const ExperimentConfig& config);
CampaignResult run_roundtrip(const ExperimentConfig& config);
CampaignResult run_sweep(const ExperimentConfig& config);

/// Dispatches on config.subcommand.
CampaignResult run_campaign(const ExperimentConfig& config);

/// Acceptance criteria (1..10) decided by a campaign.
std::vector<int> criteria_of(Subcommand sub);

/// MODWAVE_THREADS when set to a positive integer, else the hardware concurrency.
int worker_threads();

}  // namespace modwave
