#pragma once

#include "crnbound/kinetics.hpp"
#include "crnbound/network.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace crn {

enum class KineticsMode { Constant, Banded, Mixed };

struct RandomNetworkSpec {
  std::size_t N = 3;
  std::size_t num_complexes = 4;
  std::int64_t max_coeff = 3;
  std::size_t extra_edges = 1;
  std::uint64_t seed = 1;
  KineticsMode kinetics = KineticsMode::Mixed;
  double rate_lower = 0.5;
  double rate_upper = 2.0;
};

class SpecInfeasible : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GeneratedNetwork {
  ReactionNetwork network;
  Kinetics kinetics;
};

/// Distinct random complexes joined by one random directed cycle plus extra
/// chords, so the result is weakly reversible with a single linkage class.
/// Rates are log-uniform in [rate_lower, rate_upper]; banded rates use a
/// random sub-band of that interval with a sinusoid or switching profile.
GeneratedNetwork generate_random_network(const RandomNetworkSpec& spec);

}  // namespace crn
