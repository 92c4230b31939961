#pragma once

#include "crnbound/certifier.hpp"
#include "crnbound/generator.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace crn {

/// Random network family: N and num_complexes are drawn uniformly from
/// inclusive ranges per network.
struct CampaignSpec {
  std::pair<std::size_t, std::size_t> N{2, 4};
  std::pair<std::size_t, std::size_t> num_complexes{2, 5};
  std::int64_t max_coeff = 3;
  std::size_t extra_edges = 1;
  KineticsMode kinetics = KineticsMode::Mixed;
  double rate_lower = 0.5;
  double rate_upper = 2.0;
};

/// Parses e.g. {"N": [2,4], "num_complexes": 5, "max_coeff": 3,
/// "extra_edges": 1, "kinetics": "mixed", "rate_range": [0.5, 2]}.
/// Throws std::invalid_argument on malformed or infeasible specs.
CampaignSpec parse_campaign_spec(const std::string& json_text);

struct CampaignEntry {
  std::size_t index = 0;
  std::uint64_t network_seed = 0;
  std::string network_text;
  CertificateReport report;
};

struct CampaignResult {
  std::uint64_t seed = 0;
  std::vector<CampaignEntry> entries;
};

/// Network i uses seed derive_seed(seed, i); its trials use a seed derived
/// from that, so entries do not depend on count or scheduling.
CampaignResult run_campaign(const CampaignSpec& spec, std::size_t count, std::uint64_t seed, const TrialSpec& trials);

RandomNetworkSpec network_spec_for(const CampaignSpec& spec, std::uint64_t network_seed);

}  // namespace crn
