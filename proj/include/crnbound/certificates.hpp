#pragma once

#include "crnbound/rational.hpp"
#include "crnbound/tier_partition.hpp"

#include <optional>
#include <set>
#include <stdexcept>
#include <variant>
#include <vector>

namespace crn {

/// Index sets: U must be strictly positive, V strictly negative. Indices are
/// zero-based coordinates.
struct SignPattern {
  std::set<std::size_t> positive;  // U
  std::set<std::size_t> negative;  // V
};

/// First alternative: a combination sum_i c_i u_i that is <= 0 on U and >= 0
/// on V with at least one strict coordinate.
struct CombinationCert {
  RationalVector c;
};

/// Second alternative: w orthogonal to every u_i with the required signs.
struct OrthogonalCert {
  RationalVector w;
};

using SignPatternCertificate = std::variant<CombinationCert, OrthogonalCert>;

struct ConservationRelation {
  RationalVector w;
  std::set<std::size_t> positive_support;
  std::set<std::size_t> negative_support;
};

using RelationOrCombination = std::variant<ConservationRelation, CombinationCert>;

enum class CertificateErrorKind { DimensionMismatch, OverlappingPattern, IncompletePattern, EmptyPattern };

class CertificateError : public std::invalid_argument {
 public:
  CertificateError(CertificateErrorKind kind, const std::string& what)
      : std::invalid_argument(what), kind_(kind) {}
  CertificateErrorKind kind() const { return kind_; }

 private:
  CertificateErrorKind kind_;
};

/// Stiemke's alternative: either some combination of the u_i is <= 0 with a
/// strict coordinate, or a strictly positive w is orthogonal to all u_i.
SignPatternCertificate stiemke(const std::vector<RationalVector>& u);

/// Sign-pattern form; U and V must partition 0..m-1. Reduced to stiemke by
/// negating the V coordinates of every vector.
SignPatternCertificate stiemke_signed(const std::vector<RationalVector>& u, const SignPattern& pattern);

/// Searches for w with positive support exactly U, negative support exactly
/// V, and w . (y_j - y_l) = 0 whenever y_j, y_l share a tier. When none
/// exists the combination certificate refers to the within-tier difference
/// vectors restricted to U u V, in the order given by tier_differences.
RelationOrCombination respecting_relation(const std::vector<RationalVector>& complexes,
                                          const TierPartition& tiers, const SignPattern& pattern);

/// All differences y_j - y_k for j < k within each tier, tier by tier; a zero
/// vector is emitted for singleton tiers.
std::vector<RationalVector> tier_differences(const std::vector<RationalVector>& complexes,
                                             const TierPartition& tiers);

// Exact verification. Each returns true iff the certificate satisfies its
// defining (in)equalities for the given vectors.
bool verify_combination(const std::vector<RationalVector>& u, const CombinationCert& cert,
                        const SignPattern& pattern);
bool verify_orthogonal(const std::vector<RationalVector>& u, const OrthogonalCert& cert,
                       const SignPattern& pattern, bool exact_support);
bool verify(const std::vector<RationalVector>& u, const SignPatternCertificate& cert);
bool verify_signed(const std::vector<RationalVector>& u, const SignPatternCertificate& cert,
                   const SignPattern& pattern);
bool verify_relation(const std::vector<RationalVector>& complexes, const TierPartition& tiers,
                     const SignPattern& pattern, const ConservationRelation& rel);

SignPattern full_positive(std::size_t m);

namespace detail {
// The two halves of the alternative, each solved as its own exact LP.
std::optional<CombinationCert> find_combination(const std::vector<RationalVector>& u);
std::optional<OrthogonalCert> find_positive_orthogonal(const std::vector<RationalVector>& u);
}  // namespace detail

}  // namespace crn
