#include "crnbound/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace crn {

namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json flags_json(const HypothesisFlags& f) {
  return Json{{"weakly_reversible", f.weakly_reversible},
              {"single_linkage_class", f.single_linkage_class},
              {"kinetics_bounded", f.kinetics_bounded}};
}

Json violation_json(const ViolationSample& v) {
  return Json{{"x", v.x}, {"M", v.M}, {"descent_worst_case", v.descent_worst_case}};
}

Json threshold_json(const ThresholdSearch& t) {
  Json shells = Json::array();
  for (const auto& s : t.shells) {
    shells.push_back(Json{{"M", s.M}, {"samples", s.samples}, {"attempts", s.attempts}, {"violations", s.violations}});
  }
  return Json{{"M", optional_number(t.M)},
              {"violation", t.violation ? violation_json(*t.violation) : Json(nullptr)},
              {"shells", shells}};
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const auto idx = static_cast<std::size_t>(std::floor(q * static_cast<double>(v.size() - 1)));
  return v[idx];
}

}  // namespace

Json rational_vector_json(const RationalVector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

RationalVector rational_vector_from_json(const Json& j) {
  RationalVector out;
  for (const auto& e : j) out.push_back(parse_rational(e.get<std::string>()));
  return out;
}

Json certificate_json(const SignPatternCertificate& cert) {
  if (const auto* c = std::get_if<CombinationCert>(&cert)) {
    return Json{{"alt", "combination"}, {"vector", rational_vector_json(c->c)}};
  }
  return Json{{"alt", "orthogonal"}, {"vector", rational_vector_json(std::get<OrthogonalCert>(cert).w)}};
}

SignPatternCertificate certificate_from_json(const Json& j) {
  const auto alt = j.at("alt").get<std::string>();
  auto v = rational_vector_from_json(j.at("vector"));
  if (alt == "combination") return CombinationCert{std::move(v)};
  if (alt == "orthogonal") return OrthogonalCert{std::move(v)};
  throw std::invalid_argument("unknown certificate alternative: " + alt);
}

Json relation_json(const ConservationRelation& rel) {
  return Json{{"w", rational_vector_json(rel.w)},
              {"positive_support", std::vector<std::size_t>(rel.positive_support.begin(), rel.positive_support.end())},
              {"negative_support", std::vector<std::size_t>(rel.negative_support.begin(), rel.negative_support.end())}};
}

Json report_json(const CertificateReport& r) {
  Json trials = Json::array();
  for (const auto& t : r.simulation_evidence) {
    trials.push_back(Json{{"x0", t.x0},
                          {"class_bounded", t.class_bounded},
                          {"M", optional_number(t.M)},
                          {"B", optional_number(t.B)},
                          {"V1_x0", t.V1_x0},
                          {"V1_max", t.V1_max},
                          {"sup_norm_observed", t.sup_norm_observed},
                          {"first_half_sup", t.first_half_sup},
                          {"second_half_sup", t.second_half_sup},
                          {"proof_shape_holds", t.proof_shape_holds},
                          {"proof_shape_excess", t.proof_shape_excess},
                          {"bounded_verdict", t.bounded_verdict},
                          {"samples", t.samples},
                          {"stiff_switch", t.stiff_switch},
                          {"status", t.status},
                          {"error", t.error ? Json(*t.error) : Json(nullptr)}});
  }
  Json violations = Json::array();
  for (const auto& v : r.descent_violations) violations.push_back(violation_json(v));
  return Json{{"schema", kReportSchema},
              {"network", r.network_name},
              {"species", r.species},
              {"seed", r.seed},
              {"hypotheses", flags_json(r.hypotheses)},
              {"M_estimate", optional_number(r.M_estimate)},
              {"epsilon_margin", optional_number(r.epsilon_margin)},
              {"descent_violations", violations},
              {"simulation_evidence", trials},
              {"no_union_check",
               Json{{"sequences", r.no_union.sequences},
                    {"partitioned", r.no_union.partitioned},
                    {"counterexamples", r.no_union.counterexamples}}},
              {"conclusion", to_string(r.conclusion)},
              {"verdict_kind", "empirical"},
              {"notes", r.notes}};
}

Json permanence_json(const PermanenceReport& r) {
  Json trials = Json::array();
  for (const auto& t : r.trials) {
    trials.push_back(Json{{"x0", t.x0},
                          {"tail_min", t.tail_min},
                          {"tail_max", t.tail_max},
                          {"rho", t.rho},
                          {"delta_hypothesis_holds", t.delta_hypothesis_holds},
                          {"status", t.status}});
  }
  return Json{{"schema", kPermanenceSchema},
              {"hypotheses", flags_json(r.hypotheses)},
              {"delta", r.delta},
              {"epsilon_margin", r.epsilon_margin},
              {"x_ref", r.x_ref},
              {"domain_empty", r.domain_empty},
              {"threshold", r.threshold ? threshold_json(*r.threshold) : Json(nullptr)},
              {"trials", trials},
              {"rho_hat", optional_number(r.rho_hat)},
              {"common_rho_exists", r.common_rho_exists},
              {"permanence_claim", r.permanence_claim},
              {"notes", r.notes}};
}

Json campaign_json(const CampaignResult& result) {
  Json networks = Json::array();
  std::size_t certified = 0, hyp = 0, bounded = 0, total_trials = 0, proof_fail = 0, counterexamples = 0;
  std::vector<double> sup_norms;
  Json conclusions = Json::object();
  for (auto c : {Conclusion::CertifiedEmpiricallyBounded, Conclusion::HypothesesFail,
                 Conclusion::DescentViolationFound, Conclusion::Inconclusive}) {
    conclusions[to_string(c)] = 0;
  }
  for (const auto& e : result.entries) {
    const auto& r = e.report;
    double max_sup = 0;
    std::size_t b = 0;
    for (const auto& t : r.simulation_evidence) {
      b += t.bounded_verdict ? 1 : 0;
      proof_fail += t.proof_shape_holds ? 0 : 1;
      max_sup = std::max(max_sup, t.sup_norm_observed);
    }
    bounded += b;
    total_trials += r.simulation_evidence.size();
    hyp += r.hypotheses.all() ? 1 : 0;
    certified += r.conclusion == Conclusion::CertifiedEmpiricallyBounded ? 1 : 0;
    counterexamples += r.no_union.counterexamples;
    conclusions[to_string(r.conclusion)] = conclusions[to_string(r.conclusion)].get<std::size_t>() + 1;
    sup_norms.push_back(max_sup);
    networks.push_back(Json{{"index", e.index},
                            {"network_seed", e.network_seed},
                            {"network", e.network_text},
                            {"conclusion", to_string(r.conclusion)},
                            {"bounded_trials", b},
                            {"trials", r.simulation_evidence.size()},
                            {"max_sup_norm", max_sup},
                            {"report", report_json(r)}});
  }
  Json aggregate{{"networks", result.entries.size()},
                 {"hypotheses_certified", hyp},
                 {"certified_empirically_bounded", certified},
                 {"conclusions", conclusions},
                 {"bounded_trials", bounded},
                 {"total_trials", total_trials},
                 {"proof_shape_failures", proof_fail},
                 {"no_union_counterexamples", counterexamples},
                 {"max_sup_norm",
                  Json{{"min", quantile(sup_norms, 0.0)},
                       {"median", quantile(sup_norms, 0.5)},
                       {"p90", quantile(sup_norms, 0.9)},
                       {"max", quantile(sup_norms, 1.0)}}}};
  return Json{{"schema", kCampaignSchema}, {"seed", result.seed}, {"aggregate", aggregate}, {"networks", networks}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace crn
