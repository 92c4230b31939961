#pragma once

#include "crnbound/campaign.hpp"
#include "crnbound/certificates.hpp"
#include "crnbound/certifier.hpp"

#include <json.hpp>

#include <string>

namespace crn {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "crn-bound/report/v1";
inline constexpr const char* kPermanenceSchema = "crn-bound/permanence/v1";
inline constexpr const char* kCampaignSchema = "crn-bound/campaign/v1";

/// Rationals as canonical "p/q" strings ("3", "-1/2").
Json rational_vector_json(const RationalVector& v);
RationalVector rational_vector_from_json(const Json& j);

/// {"alt": "combination" | "orthogonal", "vector": [...]}
Json certificate_json(const SignPatternCertificate& cert);
SignPatternCertificate certificate_from_json(const Json& j);

Json relation_json(const ConservationRelation& rel);

Json report_json(const CertificateReport& report);
Json permanence_json(const PermanenceReport& report);
Json campaign_json(const CampaignResult& result);

/// Two-space indentation with a trailing newline.
std::string dump(const Json& j);

}  // namespace crn
