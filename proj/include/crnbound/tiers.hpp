#pragma once

#include "crnbound/certificates.hpp"
#include "crnbound/rational.hpp"
#include "crnbound/tier_partition.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace crn {

enum class Limit { ToZero, ToInfinity, Bounded };

/// Finite sample of a sequence x_n in the positive orthant.
struct PointSequence {
  std::vector<std::vector<double>> points;
  // Per-coordinate asymptotic behaviour. Declared for synthetic sequences;
  // filled by estimate_limits otherwise.
  std::optional<std::vector<Limit>> limits;
  bool limits_estimated = false;

  std::size_t size() const { return points.size(); }
  std::size_t dimension() const { return points.empty() ? 0 : points.front().size(); }
};

enum class TierErrorKind { NonPositivePoint, BadConstant, InsufficientData, PreconditionUnmet, NoPartition };

class TierError : public std::runtime_error {
 public:
  TierError(TierErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  TierErrorKind kind() const { return kind_; }

 private:
  TierErrorKind kind_;
};

struct NoPartition {
  std::string reason;
};

using TierResult = std::variant<TierPartition, NoPartition>;

/// Finite-data tier partition with f(x, y) = x^y, computed in the log domain.
/// Complexes share a tier iff |y_j.ln x_n - y_k.ln x_n| <= ln C on the tail
/// window (the last half of the sequence). Distinct tiers must have log-ratios
/// non-decreasing on the window and above ln C at the last point.
TierResult tier_partition(const PointSequence& seq, const std::vector<IntVector>& complexes, double C = 2.0);

struct SubsequencePartition {
  std::vector<std::size_t> indices;
  TierPartition partition;
};

/// Greedy refinement: for every complex pair, keep the current subsequence
/// if its log-ratio is confined to [-ln C, ln C] or already monotonically
/// diverging, otherwise pass to the running-maximum records of the ratio.
/// Throws TierError(InsufficientData) when fewer than two points survive.
SubsequencePartition partition_subsequence(const PointSequence& seq, const std::vector<IntVector>& complexes,
                                           double C = 2.0);

/// Longest subsequence that is non-increasing in every ToZero coordinate and
/// non-decreasing in every ToInfinity coordinate. Bounded coordinates are
/// unconstrained.
std::vector<std::size_t> partially_monotonic_subsequence(const PointSequence& seq);

bool is_partially_monotonic(const PointSequence& seq);

/// Classifies coordinates by comparing the second half with the first point:
/// staying below (above) it by more than `factor` marks ToZero (ToInfinity).
std::vector<Limit> estimate_limits(const std::vector<std::vector<double>>& points, double factor = 100.0);

PointSequence subsequence(const PointSequence& seq, const std::vector<std::size_t>& indices);

struct ConservationVerified {
  TierPartition tiers;
  ConservationRelation relation;
};

struct ConservationCounterexample {
  TierPartition tiers;
  SignPattern pattern;
  CombinationCert certificate;
};

using ConservationCheck = std::variant<ConservationVerified, ConservationCounterexample>;

/// Runs the respecting-relation search with U = ToZero and V = ToInfinity
/// coordinates. Requires declared limits with at least one divergent
/// coordinate, a partially monotonic sequence and a successful partition;
/// throws TierError(PreconditionUnmet) otherwise.
ConservationCheck theorem_conservation_check(const PointSequence& seq, const std::vector<IntVector>& complexes,
                                             double C = 2.0);

/// x_{n,i} = scale_i * n^{exponent_i} for n = 1..n_max, with declared limits.
struct PowerLawSpec {
  std::vector<double> exponents;
  std::size_t n_max = 100;
  std::vector<double> scales;  // optional, defaults to 1
};

PointSequence powerlaw_sequence(const PowerLawSpec& spec);

/// Parses {"type":"powerlaw","exponents":[...],"n_max":...}.
PowerLawSpec parse_powerlaw_spec(const std::string& json_text);

}  // namespace crn
