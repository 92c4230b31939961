#include "crnbound/certifier.hpp"

#include "crnbound/graph.hpp"
#include "crnbound/parallel.hpp"
#include "crnbound/random.hpp"
#include "crnbound/tiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace crn {

HypothesisFlags check_hypotheses(const ReactionNetwork& net, const Kinetics& kin) {
  HypothesisFlags f;
  f.weakly_reversible = is_weakly_reversible(net).weakly_reversible;
  f.single_linkage_class = linkage_classes(net).classes.size() == 1;
  f.kinetics_bounded = kin.size() == net.num_reactions() && kin.is_bounded();
  return f;
}

std::string to_string(Conclusion c) {
  switch (c) {
    case Conclusion::CertifiedEmpiricallyBounded:
      return "CertifiedHypotheses+EmpiricallyBounded";
    case Conclusion::HypothesesFail:
      return "HypothesesFail";
    case Conclusion::DescentViolationFound:
      return "DescentViolationFound";
    case Conclusion::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

namespace {

struct ShellSampler {
  const CompatibilityClass& cls;
  std::optional<double> delta;
  double M;

  // log-range for coordinate i
  std::pair<double, double> range(std::size_t i) const {
    const double lm = std::log(M);
    double lo = delta ? std::log(*delta) : -2 * lm - 2;
    double hi = 2 * lm + 2;
    if (cls.bounded()) hi = std::min(hi, std::log(cls.upper_bound(i)));
    return {lo, std::max(lo, hi)};
  }

  bool in_shell(const State& x) const {
    const double mx = *std::max_element(x.begin(), x.end());
    const double mn = *std::min_element(x.begin(), x.end());
    if (delta) return mn >= *delta && mx > M;
    return mx > M || mn < 1 / M;
  }

  // Cheap emptiness test: the interior shell needs a coordinate above M.
  bool trivially_empty() const {
    if (!delta || !cls.bounded()) return false;
    for (std::size_t i = 0; i < cls.num_species(); ++i) {
      if (cls.upper_bound(i) > M) return false;
    }
    return true;
  }

  bool draw(Rng& rng, State& x) const {
    const auto& splits = cls.splits();
    const auto& s = splits[rng.below(splits.size())];
    std::vector<double> free(s.free.size());
    for (std::size_t a = 0; a < s.free.size(); ++a) {
      const auto [lo, hi] = range(s.free[a]);
      free[a] = std::exp(rng.uniform(lo, hi));
    }
    return cls.complete(s, free, x) && in_shell(x);
  }
};

}  // namespace

ThresholdSearch search_descent_threshold(const MassActionSystem& sys, const CompatibilityClass& cls,
                                         std::optional<double> delta, double epsilon, const ThresholdOptions& opts) {
  if (delta && !(*delta > 0)) throw CertifierError(CertifierErrorKind::DeltaNonPositive, "delta must be positive");
  if (opts.grid.empty()) throw std::invalid_argument("threshold grid is empty");
  ThresholdSearch out;
  std::vector<std::optional<ViolationSample>> first_violation(opts.grid.size());
  const std::size_t max_attempts = 50 * opts.samples_per_shell;
  for (std::size_t g = 0; g < opts.grid.size(); ++g) {
    ShellSampler sampler{cls, delta, opts.grid[g]};
    ShellResult shell;
    shell.M = opts.grid[g];
    if (!sampler.trivially_empty()) {
      Rng rng(derive_seed(opts.seed, g));
      State x;
      while (shell.samples < opts.samples_per_shell && shell.attempts < max_attempts) {
        ++shell.attempts;
        if (!sampler.draw(rng, x)) continue;
        ++shell.samples;
        const double d = sys.descent_worst_case(x);
        if (!(d < -epsilon)) {
          ++shell.violations;
          if (!first_violation[g]) first_violation[g] = ViolationSample{x, shell.M, d};
        }
      }
    }
    out.shells.push_back(shell);
  }
  const bool any = std::any_of(out.shells.begin(), out.shells.end(), [](const auto& s) { return s.samples > 0; });
  if (!any) throw CertifierError(CertifierErrorKind::DomainEmpty, "no class points satisfy the shell constraints");

  std::size_t last_bad = out.shells.size();
  for (std::size_t g = 0; g < out.shells.size(); ++g) {
    if (out.shells[g].violations > 0) last_bad = g;
  }
  if (last_bad == out.shells.size()) {
    out.M = opts.grid.front();
  } else if (last_bad + 1 < out.shells.size()) {
    out.M = opts.grid[last_bad + 1];
  } else {
    out.violation = first_violation[last_bad];
  }
  return out;
}

ThresholdSearch search_descent_threshold(const ReactionNetwork& net, const Kinetics& kin, const DomainSpec& domain,
                                         double epsilon, const ThresholdOptions& opts) {
  if (epsilon < 0) throw std::invalid_argument("epsilon must be non-negative");
  const MassActionSystem sys(net, kin);
  const CompatibilityClass cls(net, domain.x_ref);
  return search_descent_threshold(sys, cls, domain.delta, epsilon, opts);
}

std::optional<double> lyapunov_bound(const CompatibilityClass& cls, double M) {
  const auto vertices = cls.box_vertices(1 / M, M);
  if (vertices.empty()) return std::nullopt;
  double b = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices) b = std::max(b, lyapunov(v));
  return b;
}

bool bounded_verdict(const Trajectory& traj, double horizon) {
  if (traj.status != TrajectoryStatus::Completed) return false;
  double first = 0, second = 0;
  for (std::size_t s = 0; s < traj.size(); ++s) {
    auto& slot = traj.times[s] <= horizon / 2 ? first : second;
    slot = std::max(slot, sup_norm(traj.states[s]));
  }
  return second <= 10 * first;
}

namespace {

std::vector<IntVector> complex_vectors(const ReactionNetwork& net) {
  std::vector<IntVector> out;
  for (const auto& y : net.complexes()) out.push_back(y.coefficients);
  return out;
}

// x_ref + t_n d with t_n -> the exit time (coordinates hitting zero like
// n^-3) or t_n = n^3 along an unbounded ray.
PointSequence ray_sequence(const State& x_ref, const std::vector<double>& d, std::size_t n_max) {
  const std::size_t dim = x_ref.size();
  double t_max = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dim; ++i) {
    if (d[i] < 0) t_max = std::min(t_max, x_ref[i] / -d[i]);
  }
  PointSequence seq;
  std::vector<Limit> lim(dim, Limit::Bounded);
  std::vector<bool> hits(dim, false);
  for (std::size_t i = 0; i < dim; ++i) {
    if (std::isinf(t_max)) {
      if (d[i] > 0) lim[i] = Limit::ToInfinity;
    } else if (d[i] < 0 && x_ref[i] / -d[i] <= t_max * (1 + 1e-12)) {
      lim[i] = Limit::ToZero;
      hits[i] = true;
    }
  }
  seq.limits = lim;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double nn = static_cast<double>(n);
    const double decay = 1 / (nn * nn * nn);
    State x(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      if (std::isinf(t_max)) {
        x[i] = x_ref[i] + (nn * nn * nn - 1) * d[i];
      } else if (hits[i]) {
        x[i] = x_ref[i] * decay;  // x_ref_i = -d_i t_max for a hitting coordinate
      } else {
        x[i] = x_ref[i] + t_max * (1 - decay) * d[i];
      }
    }
    seq.points.push_back(std::move(x));
  }
  return seq;
}

NoUnionCheck no_union_check(const ReactionNetwork& net, const CompatibilityClass& cls, std::size_t count, Rng& rng) {
  NoUnionCheck out;
  const auto& basis = cls.stoichiometric_basis();
  if (basis.empty()) return out;
  const auto complexes = complex_vectors(net);
  const std::size_t dim = cls.num_species();
  for (std::size_t s = 0; s < count; ++s) {
    std::vector<double> d(dim, 0.0);
    bool nonzero = false;
    for (int attempt = 0; attempt < 100 && !nonzero; ++attempt) {
      std::fill(d.begin(), d.end(), 0.0);
      for (const auto& b : basis) {
        const auto c = static_cast<double>(rng.integer(-2, 2));
        for (std::size_t i = 0; i < dim; ++i) d[i] += c * static_cast<double>(b[i]);
      }
      nonzero = std::any_of(d.begin(), d.end(), [](double v) { return v != 0; });
    }
    if (!nonzero) continue;
    ++out.sequences;
    const auto seq = ray_sequence(cls.reference(), d, 60);
    const auto result = tier_partition(seq, complexes);
    if (const auto* p = std::get_if<TierPartition>(&result)) {
      ++out.partitioned;
      if (p->tiers.front().size() == complexes.size()) ++out.counterexamples;
    }
  }
  return out;
}

State random_x0(Rng& rng, std::size_t n, double lo10, double hi10) {
  State x(n);
  for (auto& v : x) v = std::pow(10.0, rng.uniform(lo10, hi10));
  return x;
}

struct TrialOutcome {
  TrialEvidence evidence;
  std::optional<ViolationSample> violation;
  NoUnionCheck no_union;
};

TrialOutcome run_trial(const ReactionNetwork& net, const MassActionSystem& sys, const TrialSpec& spec,
                       bool hypotheses_hold, std::size_t index) {
  TrialOutcome out;
  auto& ev = out.evidence;
  Rng rng(derive_seed(spec.seed, index));
  ev.x0 = random_x0(rng, net.num_species(), spec.x0_log10_min, spec.x0_log10_max);
  ev.V1_x0 = lyapunov(ev.x0);
  const CompatibilityClass cls(net, ev.x0);
  ev.class_bounded = cls.bounded();

  ThresholdOptions topts;
  topts.samples_per_shell = spec.samples_per_shell;
  topts.grid = spec.threshold_grid;
  topts.seed = derive_seed(spec.seed, 0x10000 + index);
  try {
    const auto search = search_descent_threshold(sys, cls, std::nullopt, 0.0, topts);
    ev.M = search.M;
    out.violation = search.violation;
    if (ev.M) ev.B = lyapunov_bound(cls, *ev.M);
  } catch (const CertifierError& e) {
    ev.error = e.what();
  }

  try {
    const auto traj = integrate(sys, ev.x0, spec.horizon, spec.integrator);
    ev.samples = traj.size();
    ev.stiff_switch = traj.switched_to_stiff;
    ev.status = traj.status == TrajectoryStatus::Completed ? "completed" : "norm_limit_exceeded";
    ev.sup_norm_observed = traj.max_norm();
    ev.V1_max = *std::max_element(traj.v1.begin(), traj.v1.end());
    for (std::size_t s = 0; s < traj.size(); ++s) {
      const double n = sup_norm(traj.states[s]);
      auto& slot = traj.times[s] <= spec.horizon / 2 ? ev.first_half_sup : ev.second_half_sup;
      slot = std::max(slot, n);
    }
    ev.bounded_verdict = bounded_verdict(traj, spec.horizon);
    // without a threshold there is no B, and the bound is V1(x0) alone
    const double bound = std::max(ev.V1_x0, ev.B.value_or(-std::numeric_limits<double>::infinity()));
    ev.proof_shape_excess = ev.V1_max - bound;
    ev.proof_shape_holds = ev.proof_shape_excess <= spec.proof_shape_tolerance;
  } catch (const IntegrationError& e) {
    ev.status = "integration_error";
    ev.error = e.what();
  }

  if (hypotheses_hold && spec.no_union_sequences > 0) {
    Rng seq_rng(derive_seed(spec.seed, 0x20000 + index));
    out.no_union = no_union_check(net, cls, spec.no_union_sequences, seq_rng);
  }
  return out;
}

}  // namespace

CertificateReport certify_boundedness(const ReactionNetwork& net, const Kinetics& kin, const TrialSpec& spec) {
  if (spec.trials == 0) throw std::invalid_argument("at least one trial is required");
  if (!(spec.horizon > 0)) throw std::invalid_argument("horizon must be positive");
  if (spec.x0_log10_min > spec.x0_log10_max) throw std::invalid_argument("x0 magnitude range is empty");
  CertificateReport report;
  report.seed = spec.seed;
  for (const auto& s : net.species()) report.species.push_back(s.name);
  report.hypotheses = check_hypotheses(net, kin);
  const MassActionSystem sys(net, kin);

  std::vector<TrialOutcome> outcomes(spec.trials);
  parallel_for(spec.trials, [&](std::size_t i) { outcomes[i] = run_trial(net, sys, spec, report.hypotheses.all(), i); });

  bool all_have_M = true, all_good = true;
  double M_max = 0;
  for (auto& o : outcomes) {
    if (o.violation) report.descent_violations.push_back(*o.violation);
    if (o.evidence.M) {
      M_max = std::max(M_max, *o.evidence.M);
    } else {
      all_have_M = false;
    }
    all_good = all_good && !o.evidence.error && o.evidence.bounded_verdict && o.evidence.proof_shape_holds;
    report.no_union.sequences += o.no_union.sequences;
    report.no_union.partitioned += o.no_union.partitioned;
    report.no_union.counterexamples += o.no_union.counterexamples;
    report.simulation_evidence.push_back(std::move(o.evidence));
  }
  if (all_have_M) report.M_estimate = M_max;

  if (!report.hypotheses.all()) {
    report.conclusion = Conclusion::HypothesesFail;
  } else if (!report.descent_violations.empty()) {
    report.conclusion = Conclusion::DescentViolationFound;
  } else if (!all_have_M || !all_good || report.no_union.counterexamples > 0) {
    report.conclusion = Conclusion::Inconclusive;
  } else {
    report.conclusion = Conclusion::CertifiedEmpiricallyBounded;
  }

  report.notes.push_back("hypotheses are checked exactly; boundedness is empirical evidence from descent sampling "
                         "and finite-horizon simulation");
  report.notes.push_back("B is the maximum of V1 over the vertices of the class intersected with [1/M, M]^N");
  report.notes.push_back("no-union check uses finite-window tier surrogates (last half of 60 points, C = 2)");
  if (report.no_union.counterexamples > 0) {
    report.notes.push_back("a divergent class sequence produced a single tier containing every complex");
  }
  return report;
}

PermanenceReport check_permanence(const ReactionNetwork& net, const Kinetics& kin, double delta,
                                  const PermanenceSpec& spec) {
  if (!(delta > 0)) throw CertifierError(CertifierErrorKind::DeltaNonPositive, "delta must be positive");
  if (spec.trials == 0) throw std::invalid_argument("at least one trial is required");
  PermanenceReport report;
  report.delta = delta;
  report.epsilon_margin = spec.epsilon;
  report.hypotheses = check_hypotheses(net, kin);
  report.x_ref = spec.x_ref.empty() ? State(net.num_species(), 1.0) : spec.x_ref;
  const MassActionSystem sys(net, kin);
  const CompatibilityClass cls(net, report.x_ref);

  ThresholdOptions topts;
  topts.samples_per_shell = spec.samples_per_shell;
  topts.seed = derive_seed(spec.seed, 0x30000);
  try {
    report.threshold = search_descent_threshold(sys, cls, delta, spec.epsilon, topts);
  } catch (const CertifierError& e) {
    if (e.kind() != CertifierErrorKind::DomainEmpty) throw;
    report.domain_empty = true;
  }

  // Starting points: x_ref when it lies in the delta-interior, then random
  // class points with every coordinate >= delta.
  std::vector<State> starts;
  if (*std::min_element(report.x_ref.begin(), report.x_ref.end()) >= delta) starts.push_back(report.x_ref);
  Rng rng(derive_seed(spec.seed, 0x40000));
  const double top = 10 * *std::max_element(report.x_ref.begin(), report.x_ref.end()) + delta;
  for (std::size_t attempt = 0; starts.size() < spec.trials && attempt < 100000; ++attempt) {
    const auto& s = cls.splits()[rng.below(cls.splits().size())];
    std::vector<double> free(s.free.size());
    for (std::size_t a = 0; a < s.free.size(); ++a) {
      const double hi = cls.bounded() ? cls.upper_bound(s.free[a]) : top;
      if (hi <= delta) break;
      free[a] = rng.log_uniform(delta, hi);
    }
    State x;
    if (!cls.complete(s, free, x)) continue;
    if (*std::min_element(x.begin(), x.end()) < delta) continue;
    starts.push_back(std::move(x));
  }

  std::vector<PermanenceTrial> trials(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) {
    auto& tr = trials[i];
    tr.x0 = starts[i];
    try {
      const auto traj = integrate(sys, tr.x0, spec.horizon, spec.integrator);
      tr.status = traj.status == TrajectoryStatus::Completed ? "completed" : "norm_limit_exceeded";
      tr.tail_min = std::numeric_limits<double>::infinity();
      tr.tail_max = 0;
      for (std::size_t s = 0; s < traj.size(); ++s) {
        if (traj.times[s] < spec.horizon / 2) continue;
        for (double v : traj.states[s]) {
          tr.tail_min = std::min(tr.tail_min, v);
          tr.tail_max = std::max(tr.tail_max, v);
        }
      }
      tr.rho = std::min(tr.tail_min, 1 / tr.tail_max);
      tr.delta_hypothesis_holds = tr.tail_min > delta;
    } catch (const IntegrationError& e) {
      tr.status = std::string("integration_error: ") + e.what();
    }
  });
  report.trials = std::move(trials);

  bool ok = !report.trials.empty();
  double rho = std::numeric_limits<double>::infinity();
  for (const auto& t : report.trials) {
    ok = ok && t.status == "completed" && t.delta_hypothesis_holds;
    rho = std::min(rho, t.rho);
  }
  if (!report.trials.empty()) report.rho_hat = rho;
  report.common_rho_exists = ok && rho > 0 && std::isfinite(rho);
  const bool threshold_ok = report.domain_empty || (report.threshold && report.threshold->M);
  report.permanence_claim = report.hypotheses.all() && report.common_rho_exists && threshold_ok;

  report.notes.push_back("the threshold M = M(epsilon, delta) depends explicitly on delta");
  report.notes.push_back("conditional on every trajectory keeping liminf x_i > delta; delta is user supplied");
  report.notes.push_back("rho_hat is a finite-horizon estimate over the second half of each trial");
  if (report.domain_empty) {
    report.notes.push_back("the class is bounded and no delta-interior point exceeds the smallest grid M; "
                           "the descent condition holds vacuously");
  }
  if (!report.hypotheses.all()) report.notes.push_back("hypotheses fail; no permanence claim is made");
  return report;
}

}  // namespace crn
