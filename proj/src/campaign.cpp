#include "crnbound/campaign.hpp"

#include "crnbound/parser.hpp"
#include "crnbound/random.hpp"

#include <json.hpp>

#include <stdexcept>

namespace crn {

namespace {

std::pair<std::size_t, std::size_t> size_range(const nlohmann::json& j, const char* key,
                                               std::pair<std::size_t, std::size_t> fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  std::pair<std::size_t, std::size_t> r;
  if (v.is_number_integer()) {
    r = {v.get<std::size_t>(), v.get<std::size_t>()};
  } else if (v.is_array() && v.size() == 2) {
    r = {v[0].get<std::size_t>(), v[1].get<std::size_t>()};
  } else {
    throw std::invalid_argument(std::string("random spec: ") + key + " must be an integer or [lo, hi]");
  }
  if (r.first > r.second) throw std::invalid_argument(std::string("random spec: empty range for ") + key);
  return r;
}

}  // namespace

CampaignSpec parse_campaign_spec(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("random spec: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("random spec must be a JSON object");
  CampaignSpec s;
  try {
    s.N = size_range(j, "N", s.N);
    s.num_complexes = size_range(j, "num_complexes", s.num_complexes);
    s.max_coeff = j.value("max_coeff", s.max_coeff);
    s.extra_edges = j.value("extra_edges", s.extra_edges);
    const auto mode = j.value("kinetics", std::string("mixed"));
    if (mode == "constant") {
      s.kinetics = KineticsMode::Constant;
    } else if (mode == "banded") {
      s.kinetics = KineticsMode::Banded;
    } else if (mode == "mixed") {
      s.kinetics = KineticsMode::Mixed;
    } else {
      throw std::invalid_argument("random spec: kinetics must be constant, banded or mixed");
    }
    if (j.contains("rate_range")) {
      s.rate_lower = j.at("rate_range").at(0).get<double>();
      s.rate_upper = j.at("rate_range").at(1).get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("random spec: ") + e.what());
  }
  if (s.N.first < 1) throw std::invalid_argument("random spec: N must be at least 1");
  if (s.num_complexes.first < 2) throw std::invalid_argument("random spec: num_complexes must be at least 2");
  if (s.max_coeff < 1) throw std::invalid_argument("random spec: max_coeff must be at least 1");
  if (!(s.rate_lower > 0) || s.rate_lower > s.rate_upper) throw std::invalid_argument("random spec: bad rate_range");
  // every draw must admit num_complexes distinct complexes in {0..max_coeff}^N
  std::size_t available = 1;
  for (std::size_t i = 0; i < s.N.first && available < s.num_complexes.second; ++i) available *= s.max_coeff + 1;
  if (available < s.num_complexes.second) {
    throw std::invalid_argument("random spec: too few distinct complexes for num_complexes at the smallest N");
  }
  return s;
}

RandomNetworkSpec network_spec_for(const CampaignSpec& spec, std::uint64_t network_seed) {
  Rng rng(network_seed);
  RandomNetworkSpec r;
  r.N = static_cast<std::size_t>(rng.integer(static_cast<std::int64_t>(spec.N.first),
                                             static_cast<std::int64_t>(spec.N.second)));
  r.num_complexes = static_cast<std::size_t>(rng.integer(static_cast<std::int64_t>(spec.num_complexes.first),
                                                         static_cast<std::int64_t>(spec.num_complexes.second)));
  r.max_coeff = spec.max_coeff;
  r.extra_edges = spec.extra_edges;
  r.kinetics = spec.kinetics;
  r.rate_lower = spec.rate_lower;
  r.rate_upper = spec.rate_upper;
  r.seed = derive_seed(network_seed, 1);
  return r;
}

CampaignResult run_campaign(const CampaignSpec& spec, std::size_t count, std::uint64_t seed, const TrialSpec& trials) {
  CampaignResult out;
  out.seed = seed;
  for (std::size_t i = 0; i < count; ++i) {
    CampaignEntry e;
    e.index = i;
    e.network_seed = derive_seed(seed, i);
    const auto g = generate_random_network(network_spec_for(spec, e.network_seed));
    e.network_text = render(g.network, g.kinetics);
    TrialSpec ts = trials;
    ts.seed = derive_seed(e.network_seed, 2);
    e.report = certify_boundedness(g.network, g.kinetics, ts);
    e.report.network_name = "random-" + std::to_string(i);
    out.entries.push_back(std::move(e));
  }
  return out;
}

}  // namespace crn
