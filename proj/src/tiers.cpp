#include "crnbound/tiers.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace crn {

std::vector<std::size_t> TierPartition::tier_of(std::size_t num_complexes) const {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> out(num_complexes, unset);
  for (std::size_t t = 0; t < tiers.size(); ++t) {
    if (tiers[t].empty()) throw std::invalid_argument("tier " + std::to_string(t) + " is empty");
    for (auto c : tiers[t]) {
      if (c >= num_complexes) throw std::invalid_argument("tier member out of range");
      if (out[c] != unset) throw std::invalid_argument("tiers overlap");
      out[c] = t;
    }
  }
  if (std::find(out.begin(), out.end(), unset) != out.end()) {
    throw std::invalid_argument("tiers do not cover every complex");
  }
  return out;
}

namespace {

// log_values[n][j] = y_j . ln x_n
std::vector<std::vector<double>> log_monomials(const PointSequence& seq, const std::vector<IntVector>& complexes) {
  const std::size_t dim = seq.dimension();
  std::vector<std::vector<double>> out;
  out.reserve(seq.size());
  for (const auto& x : seq.points) {
    if (x.size() != dim) throw std::invalid_argument("points differ in dimension");
    std::vector<double> lx(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      if (!(x[i] > 0) || !std::isfinite(x[i])) {
        throw TierError(TierErrorKind::NonPositivePoint, "sequence points must be strictly positive and finite");
      }
      lx[i] = std::log(x[i]);
    }
    std::vector<double> row(complexes.size(), 0.0);
    for (std::size_t j = 0; j < complexes.size(); ++j) {
      if (complexes[j].size() != dim) throw std::invalid_argument("complex dimension differs from points");
      for (std::size_t i = 0; i < dim; ++i) row[j] += static_cast<double>(complexes[j][i]) * lx[i];
    }
    out.push_back(std::move(row));
  }
  return out;
}

double tolerance(const std::vector<std::vector<double>>& logs) {
  double scale = 1.0;
  for (const auto& row : logs) {
    for (double v : row) scale = std::max(scale, std::abs(v));
  }
  return 1e-9 * scale;
}

void check_constant(double C) {
  if (!(C > 1) || !std::isfinite(C)) throw TierError(TierErrorKind::BadConstant, "tier constant must satisfy C > 1");
}

TierResult partition_logs(const std::vector<std::vector<double>>& logs, std::size_t num_complexes, double C,
                          double tol) {
  const double lnC = std::log(C);
  const std::size_t len = logs.size();
  const std::size_t first = len / 2;
  auto diff = [&](std::size_t n, std::size_t j, std::size_t k) { return logs[n][j] - logs[n][k]; };

  std::vector<std::vector<bool>> share(num_complexes, std::vector<bool>(num_complexes, true));
  for (std::size_t j = 0; j < num_complexes; ++j) {
    for (std::size_t k = j + 1; k < num_complexes; ++k) {
      bool s = true;
      for (std::size_t n = first; n < len && s; ++n) s = std::abs(diff(n, j, k)) <= lnC + tol;
      share[j][k] = share[k][j] = s;
    }
  }
  std::vector<std::vector<std::size_t>> groups;
  std::vector<bool> assigned(num_complexes, false);
  for (std::size_t j = 0; j < num_complexes; ++j) {
    if (assigned[j]) continue;
    std::vector<std::size_t> g;
    for (std::size_t k = 0; k < num_complexes; ++k) {
      if (share[j][k]) g.push_back(k);
    }
    for (auto a : g) {
      for (auto b : g) {
        if (!share[a][b] || assigned[a]) {
          return NoPartition{"tier sharing is not transitive on the tail window"};
        }
      }
    }
    for (auto a : g) assigned[a] = true;
    groups.push_back(std::move(g));
  }

  std::stable_sort(groups.begin(), groups.end(), [&](const auto& a, const auto& b) {
    return logs[len - 1][a.front()] > logs[len - 1][b.front()];
  });

  for (std::size_t ga = 0; ga < groups.size(); ++ga) {
    for (std::size_t gb = ga + 1; gb < groups.size(); ++gb) {
      for (auto j : groups[ga]) {
        for (auto k : groups[gb]) {
          for (std::size_t n = first + 1; n < len; ++n) {
            if (diff(n, j, k) < diff(n - 1, j, k) - tol) {
              return NoPartition{"log-ratio between tiers is not monotone on the tail window"};
            }
          }
          if (diff(len - 1, j, k) <= lnC + tol) {
            return NoPartition{"log-ratio between tiers does not exceed ln C at the last point"};
          }
        }
      }
    }
  }
  TierPartition out;
  out.tiers = std::move(groups);
  out.constant_C = C;
  return out;
}

}  // namespace

PointSequence subsequence(const PointSequence& seq, const std::vector<std::size_t>& indices) {
  PointSequence out;
  out.limits = seq.limits;
  out.limits_estimated = seq.limits_estimated;
  for (auto i : indices) out.points.push_back(seq.points.at(i));
  return out;
}

TierResult tier_partition(const PointSequence& seq, const std::vector<IntVector>& complexes, double C) {
  check_constant(C);
  if (seq.size() < 2) throw TierError(TierErrorKind::InsufficientData, "tier partition needs at least two points");
  if (complexes.empty()) throw std::invalid_argument("tier partition needs at least one complex");
  const auto logs = log_monomials(seq, complexes);
  return partition_logs(logs, complexes.size(), C, tolerance(logs));
}

SubsequencePartition partition_subsequence(const PointSequence& seq, const std::vector<IntVector>& complexes,
                                           double C) {
  check_constant(C);
  if (seq.size() < 2) throw TierError(TierErrorKind::InsufficientData, "need at least two points");
  const auto logs = log_monomials(seq, complexes);
  const double tol = tolerance(logs);
  const double lnC = std::log(C);

  std::vector<std::size_t> keep(seq.size());
  std::iota(keep.begin(), keep.end(), 0);

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t j = 0; j < complexes.size(); ++j) {
      for (std::size_t k = j + 1; k < complexes.size(); ++k) {
        std::vector<double> d;
        for (auto n : keep) d.push_back(logs[n][j] - logs[n][k]);
        std::size_t arg = 0;
        for (std::size_t i = 1; i < d.size(); ++i) {
          if (std::abs(d[i]) > std::abs(d[arg])) arg = i;
        }
        if (std::abs(d[arg]) <= lnC + tol) continue;
        const double sign = d[arg] > 0 ? 1.0 : -1.0;
        bool monotone = true;
        for (std::size_t i = 1; i < d.size() && monotone; ++i) monotone = sign * d[i] >= sign * d[i - 1] - tol;
        if (monotone && sign * d.back() > lnC + tol) continue;

        std::vector<std::size_t> records;
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < d.size(); ++i) {
          if (sign * d[i] > best + tol) {
            best = sign * d[i];
            records.push_back(keep[i]);
          }
        }
        if (records.size() < 2) {
          throw TierError(TierErrorKind::InsufficientData, "fewer than two points remain after refinement");
        }
        keep = std::move(records);
        changed = true;
      }
    }
  }

  std::vector<std::vector<double>> sub;
  for (auto n : keep) sub.push_back(logs[n]);
  auto result = partition_logs(sub, complexes.size(), C, tol);
  if (auto* np = std::get_if<NoPartition>(&result)) {
    throw TierError(TierErrorKind::NoPartition, "refined subsequence admits no partition: " + np->reason);
  }
  return {std::move(keep), std::get<TierPartition>(std::move(result))};
}

std::vector<Limit> estimate_limits(const std::vector<std::vector<double>>& points, double factor) {
  if (points.size() < 2) throw TierError(TierErrorKind::InsufficientData, "need at least two points");
  const std::size_t dim = points.front().size();
  const double lf = std::log(factor);
  std::vector<Limit> out(dim, Limit::Bounded);
  for (std::size_t i = 0; i < dim; ++i) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t n = points.size() / 2; n < points.size(); ++n) {
      lo = std::min(lo, std::log(points[n][i]));
      hi = std::max(hi, std::log(points[n][i]));
    }
    const double start = std::log(points.front()[i]);
    if (hi < start - lf) out[i] = Limit::ToZero;
    if (lo > start + lf) out[i] = Limit::ToInfinity;
  }
  return out;
}

namespace {

const std::vector<Limit>& limits_of(const PointSequence& seq, std::vector<Limit>& storage) {
  if (seq.limits) {
    if (seq.limits->size() != seq.dimension()) throw std::invalid_argument("limit classification has wrong size");
    return *seq.limits;
  }
  storage = estimate_limits(seq.points);
  return storage;
}

bool follows(const std::vector<double>& prev, const std::vector<double>& next, const std::vector<Limit>& lim) {
  for (std::size_t i = 0; i < lim.size(); ++i) {
    if (lim[i] == Limit::ToZero && next[i] > prev[i]) return false;
    if (lim[i] == Limit::ToInfinity && next[i] < prev[i]) return false;
  }
  return true;
}

}  // namespace

std::vector<std::size_t> partially_monotonic_subsequence(const PointSequence& seq) {
  if (seq.size() < 2) throw TierError(TierErrorKind::InsufficientData, "need at least two points");
  std::vector<Limit> storage;
  const auto& lim = limits_of(seq, storage);

  // Longest chain in the coordinatewise order; O(n^2) dynamic programme.
  const std::size_t len = seq.size();
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> length(len, 1), prev(len, none);
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (length[j] + 1 >= length[i] && follows(seq.points[j], seq.points[i], lim)) {
        length[i] = length[j] + 1;
        prev[i] = j;
      }
    }
  }
  std::size_t end = 0;
  for (std::size_t i = 0; i < len; ++i) {
    if (length[i] >= length[end]) end = i;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = end; i != none; i = prev[i]) out.push_back(i);
  std::reverse(out.begin(), out.end());
  if (out.size() < 2) throw TierError(TierErrorKind::InsufficientData, "no partially monotonic subsequence of length 2");
  return out;
}

bool is_partially_monotonic(const PointSequence& seq) {
  std::vector<Limit> storage;
  const auto& lim = limits_of(seq, storage);
  for (std::size_t n = 1; n < seq.size(); ++n) {
    if (!follows(seq.points[n - 1], seq.points[n], lim)) return false;
  }
  return true;
}

ConservationCheck theorem_conservation_check(const PointSequence& seq, const std::vector<IntVector>& complexes,
                                             double C) {
  if (!seq.limits) throw TierError(TierErrorKind::PreconditionUnmet, "coordinate limits must be declared");
  SignPattern pattern;
  for (std::size_t i = 0; i < seq.limits->size(); ++i) {
    if ((*seq.limits)[i] == Limit::ToZero) pattern.positive.insert(i);
    if ((*seq.limits)[i] == Limit::ToInfinity) pattern.negative.insert(i);
  }
  if (pattern.positive.empty() && pattern.negative.empty()) {
    throw TierError(TierErrorKind::PreconditionUnmet, "no coordinate tends to 0 or infinity");
  }
  if (!is_partially_monotonic(seq)) throw TierError(TierErrorKind::PreconditionUnmet, "sequence is not partially monotonic");
  auto tiers = tier_partition(seq, complexes, C);
  if (auto* np = std::get_if<NoPartition>(&tiers)) {
    throw TierError(TierErrorKind::PreconditionUnmet, "complexes are not partitioned along the sequence: " + np->reason);
  }
  const auto& partition = std::get<TierPartition>(tiers);

  std::vector<RationalVector> ys;
  for (const auto& y : complexes) ys.push_back(to_rational(y));
  auto found = respecting_relation(ys, partition, pattern);
  if (auto* rel = std::get_if<ConservationRelation>(&found)) return ConservationVerified{partition, *rel};
  return ConservationCounterexample{partition, pattern, std::get<CombinationCert>(found)};
}

PointSequence powerlaw_sequence(const PowerLawSpec& spec) {
  if (spec.exponents.empty()) throw std::invalid_argument("powerlaw: at least one exponent required");
  if (spec.n_max < 2) throw TierError(TierErrorKind::InsufficientData, "powerlaw: n_max must be at least 2");
  if (!spec.scales.empty() && spec.scales.size() != spec.exponents.size()) {
    throw std::invalid_argument("powerlaw: scales and exponents differ in length");
  }
  PointSequence seq;
  std::vector<Limit> lim;
  for (double a : spec.exponents) lim.push_back(a < 0 ? Limit::ToZero : a > 0 ? Limit::ToInfinity : Limit::Bounded);
  seq.limits = lim;
  for (std::size_t n = 1; n <= spec.n_max; ++n) {
    std::vector<double> x;
    for (std::size_t i = 0; i < spec.exponents.size(); ++i) {
      const double s = spec.scales.empty() ? 1.0 : spec.scales[i];
      x.push_back(s * std::pow(static_cast<double>(n), spec.exponents[i]));
    }
    seq.points.push_back(std::move(x));
  }
  return seq;
}

PowerLawSpec parse_powerlaw_spec(const std::string& json_text) {
  const auto j = nlohmann::json::parse(json_text);
  if (j.value("type", std::string()) != "powerlaw") throw std::invalid_argument("sequence spec: type must be \"powerlaw\"");
  PowerLawSpec spec;
  spec.exponents = j.at("exponents").get<std::vector<double>>();
  spec.n_max = j.at("n_max").get<std::size_t>();
  if (j.contains("scales")) spec.scales = j.at("scales").get<std::vector<double>>();
  return spec;
}

}  // namespace crn
