#pragma once

#include "crnbound/compat_class.hpp"
#include "crnbound/dynamics.hpp"
#include "crnbound/integrator.hpp"
#include "crnbound/kinetics.hpp"
#include "crnbound/network.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace crn {

struct HypothesisFlags {
  bool weakly_reversible = false;
  bool single_linkage_class = false;
  bool kinetics_bounded = false;

  bool all() const { return weakly_reversible && single_linkage_class && kinetics_bounded; }
};

HypothesisFlags check_hypotheses(const ReactionNetwork& net, const Kinetics& kin);

enum class CertifierErrorKind { DomainEmpty, DeltaNonPositive };

class CertifierError : public std::runtime_error {
 public:
  CertifierError(CertifierErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  CertifierErrorKind kind() const { return kind_; }

 private:
  CertifierErrorKind kind_;
};

/// Class representative, plus the boundary margin delta for the interior
/// variant. Without delta the shells are {some x_i > M or x_i < 1/M}; with
/// delta they are {all x_i >= delta and |x|_inf > M}.
struct DomainSpec {
  State x_ref;
  std::optional<double> delta;
};

struct ThresholdOptions {
  std::vector<double> grid = {1e1, 1e2, 1e3, 1e4, 1e5, 1e6};
  std::size_t samples_per_shell = 10000;
  std::uint64_t seed = 1;
};

struct ShellResult {
  double M = 0;
  std::size_t samples = 0;
  std::size_t attempts = 0;
  std::size_t violations = 0;
};

struct ViolationSample {
  State x;
  double M = 0;
  double descent_worst_case = 0;
};

/// Exactly one of M and violation is set.
struct ThresholdSearch {
  std::vector<ShellResult> shells;
  std::optional<double> M;
  std::optional<ViolationSample> violation;
};

/// Samples every shell on the grid and evaluates descent_worst_case. A point
/// violates when the value is >= -epsilon. M is the smallest grid value from
/// which every shell is violation free; an empty shell counts as violation
/// free. Throws CertifierError(DomainEmpty) if no shell has a sample.
ThresholdSearch search_descent_threshold(const ReactionNetwork& net, const Kinetics& kin, const DomainSpec& domain,
                                         double epsilon = 0.0, const ThresholdOptions& opts = {});
ThresholdSearch search_descent_threshold(const MassActionSystem& sys, const CompatibilityClass& cls,
                                         std::optional<double> delta, double epsilon, const ThresholdOptions& opts);

/// max V1 over the vertices of class closure intersected with [1/M, M]^N;
/// V1 is convex, so this bounds V1 on that polytope and on its boundary.
std::optional<double> lyapunov_bound(const CompatibilityClass& cls, double M);

struct TrialSpec {
  std::size_t trials = 8;
  double x0_log10_min = -1.0;  // coordinates of x0 are log-uniform in
  double x0_log10_max = 3.0;   // [10^min, 10^max]
  double horizon = 50.0;
  std::uint64_t seed = 20240501;
  std::size_t samples_per_shell = 10000;
  std::vector<double> threshold_grid = ThresholdOptions{}.grid;
  std::size_t no_union_sequences = 8;  // per trial
  double proof_shape_tolerance = 1e-3;
  IntegratorOptions integrator;
};

struct TrialEvidence {
  State x0;
  bool class_bounded = false;
  std::optional<double> M;
  std::optional<double> B;
  double V1_x0 = 0;
  double V1_max = 0;
  double sup_norm_observed = 0;
  double first_half_sup = 0;
  double second_half_sup = 0;
  bool proof_shape_holds = false;
  double proof_shape_excess = 0;  // max of V1(x(t)) - max(V1(x0), B)
  bool bounded_verdict = false;
  std::size_t samples = 0;
  bool stiff_switch = false;
  std::string status;  // completed, norm_limit_exceeded, or the integration error
  std::optional<std::string> error;
};

struct NoUnionCheck {
  std::size_t sequences = 0;
  std::size_t partitioned = 0;
  std::size_t counterexamples = 0;
};

enum class Conclusion { CertifiedEmpiricallyBounded, HypothesesFail, DescentViolationFound, Inconclusive };

std::string to_string(Conclusion c);

struct CertificateReport {
  std::string network_name;
  std::vector<std::string> species;
  HypothesisFlags hypotheses;
  std::optional<double> M_estimate;
  std::optional<double> epsilon_margin;
  std::vector<ViolationSample> descent_violations;
  std::vector<TrialEvidence> simulation_evidence;
  NoUnionCheck no_union;
  Conclusion conclusion = Conclusion::Inconclusive;
  std::vector<std::string> notes;
  std::uint64_t seed = 0;
};

CertificateReport certify_boundedness(const ReactionNetwork& net, const Kinetics& kin, const TrialSpec& spec);

struct PermanenceTrial {
  State x0;
  double tail_min = 0;
  double tail_max = 0;
  double rho = 0;
  bool delta_hypothesis_holds = false;  // tail minimum exceeds delta
  std::string status;
};

struct PermanenceReport {
  HypothesisFlags hypotheses;
  double delta = 0;
  double epsilon_margin = 0;
  State x_ref;
  bool domain_empty = false;  // every delta-interior shell was empty (bounded class)
  std::optional<ThresholdSearch> threshold;
  std::vector<PermanenceTrial> trials;
  std::optional<double> rho_hat;
  bool common_rho_exists = false;
  bool permanence_claim = false;
  std::vector<std::string> notes;
};

struct PermanenceSpec {
  State x_ref;  // empty means the all-ones point
  std::size_t trials = 8;
  double horizon = 50.0;
  double epsilon = 1e-3;
  std::uint64_t seed = 20240501;
  std::size_t samples_per_shell = 10000;
  IntegratorOptions integrator;
};

/// Interior threshold search plus simulated trials from points of the class
/// of x_ref with every coordinate >= delta. Throws DeltaNonPositive.
PermanenceReport check_permanence(const ReactionNetwork& net, const Kinetics& kin, double delta,
                                  const PermanenceSpec& spec);

/// First half vs second half of the horizon: bounded iff the second-half
/// sup-norm is at most 10x the first-half sup-norm.
bool bounded_verdict(const Trajectory& traj, double horizon);

}  // namespace crn
