#include "crnbound/generator.hpp"

#include "crnbound/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace crn {

namespace {

RateSpec random_rate(Rng& rng, const RandomNetworkSpec& spec, std::size_t k) {
  bool banded = spec.kinetics == KineticsMode::Banded || (spec.kinetics == KineticsMode::Mixed && rng.coin());
  if (!banded) return ConstantRate{rng.log_uniform(spec.rate_lower, spec.rate_upper)};
  double a = rng.log_uniform(spec.rate_lower, spec.rate_upper);
  double b = rng.log_uniform(spec.rate_lower, spec.rate_upper);
  if (a > b) std::swap(a, b);
  BandedRate r{a, b, {}};
  if (rng.coin()) {
    r.profile.kind = ProfileKind::Sinusoid;
    r.profile.period = rng.uniform(2.0, 20.0);
    r.profile.phase = rng.uniform(0.0, 2 * std::numbers::pi);
  } else {
    r.profile.kind = ProfileKind::Switching;
    r.profile.dwell = rng.uniform(0.5, 5.0);
    r.profile.seed = derive_seed(spec.seed, 0x50000 + k);
  }
  return r;
}

}  // namespace

GeneratedNetwork generate_random_network(const RandomNetworkSpec& spec) {
  if (spec.N < 1) throw SpecInfeasible("N must be at least 1");
  if (spec.num_complexes < 2) throw SpecInfeasible("num_complexes must be at least 2");
  if (spec.max_coeff < 1) throw SpecInfeasible("max_coeff must be at least 1");
  if (!(spec.rate_lower > 0) || spec.rate_lower > spec.rate_upper) throw SpecInfeasible("invalid rate range");
  const double available = std::pow(static_cast<double>(spec.max_coeff + 1), static_cast<double>(spec.N));
  if (static_cast<double>(spec.num_complexes) > available) {
    throw SpecInfeasible("more distinct complexes requested than exist");
  }

  Rng rng(spec.seed);
  const std::size_t nc = spec.num_complexes;
  std::vector<IntVector> complexes;
  for (int attempt = 0;; ++attempt) {
    if (attempt == 1000) throw SpecInfeasible("could not sample complexes using every species");
    std::set<std::vector<std::int64_t>> seen;
    complexes.clear();
    while (complexes.size() < nc) {
      std::vector<std::int64_t> y(spec.N);
      for (auto& v : y) v = rng.integer(0, spec.max_coeff);
      if (seen.insert(y).second) complexes.push_back(y);
    }
    std::vector<bool> used(spec.N, false);
    for (const auto& c : complexes) {
      for (std::size_t i = 0; i < spec.N; ++i) used[i] = used[i] || c[i] != 0;
    }
    if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) break;
  }

  // Random cycle through all complexes.
  std::vector<std::size_t> order(nc);
  for (std::size_t i = 0; i < nc; ++i) order[i] = i;
  for (std::size_t i = nc - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
  std::vector<Reaction> reactions;
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < nc; ++i) {
    const auto e = std::make_pair(order[i], order[(i + 1) % nc]);
    if (edges.insert(e).second) reactions.push_back({e.first, e.second});
  }
  const std::size_t max_edges = nc * (nc - 1);
  for (std::size_t added = 0; added < spec.extra_edges && edges.size() < max_edges;) {
    const auto a = rng.below(nc), b = rng.below(nc);
    if (a == b || !edges.insert({a, b}).second) continue;
    reactions.push_back({a, b});
    ++added;
  }

  RawNetwork raw;
  for (std::size_t i = 0; i < spec.N; ++i) raw.species.push_back("S" + std::to_string(i + 1));
  raw.complexes = std::move(complexes);
  raw.reactions = std::move(reactions);

  std::vector<RateSpec> rates;
  for (std::size_t k = 0; k < raw.reactions.size(); ++k) rates.push_back(random_rate(rng, spec, k));
  return {validate_network(raw), Kinetics(std::move(rates))};
}

}  // namespace crn
