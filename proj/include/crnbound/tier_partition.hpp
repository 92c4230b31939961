#pragma once

#include <cstddef>
#include <vector>

namespace crn {

/// Ordered tiers T_1 > T_2 > ... > T_P of complex indices together with the
/// comparability constant C > 1.
struct TierPartition {
  std::vector<std::vector<std::size_t>> tiers;
  double constant_C = 2.0;

  std::size_t num_tiers() const { return tiers.size(); }
  /// tier index of each complex; throws if the tiers do not partition 0..n-1.
  std::vector<std::size_t> tier_of(std::size_t num_complexes) const;

  bool operator==(const TierPartition&) const = default;
};

}  // namespace crn
