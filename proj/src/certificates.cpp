#include "crnbound/certificates.hpp"

#include "crnbound/simplex.hpp"

#include <algorithm>

namespace crn {

namespace {

std::size_t common_dimension(const std::vector<RationalVector>& u) {
  if (u.empty()) throw CertificateError(CertificateErrorKind::DimensionMismatch, "at least one vector is required");
  const std::size_t m = u.front().size();
  if (m == 0) throw CertificateError(CertificateErrorKind::DimensionMismatch, "vectors must have dimension >= 1");
  for (const auto& v : u) {
    if (v.size() != m) throw CertificateError(CertificateErrorKind::DimensionMismatch, "vectors differ in dimension");
  }
  return m;
}

RationalVector combine(const std::vector<RationalVector>& u, const RationalVector& c) {
  RationalVector s(u.front().size(), Rational(0));
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (c[i] == 0) continue;
    for (std::size_t j = 0; j < s.size(); ++j) s[j] += c[i] * u[i][j];
  }
  return s;
}

void check_pattern(const SignPattern& p, std::size_t m) {
  for (auto j : p.positive) {
    if (j >= m) throw CertificateError(CertificateErrorKind::DimensionMismatch, "pattern index out of range");
    if (p.negative.count(j)) throw CertificateError(CertificateErrorKind::OverlappingPattern, "U and V overlap");
  }
  for (auto j : p.negative) {
    if (j >= m) throw CertificateError(CertificateErrorKind::DimensionMismatch, "pattern index out of range");
  }
}

RationalVector reflect(RationalVector v, const SignPattern& p) {
  for (auto j : p.negative) v[j] = -v[j];
  return v;
}

}  // namespace

namespace detail {

std::optional<CombinationCert> find_combination(const std::vector<RationalVector>& u) {
  const std::size_t m = common_dimension(u);
  const std::size_t n = u.size();
  // Columns: c+ (n), c- (n), z (m), s (m). Maximise sum z with
  // sum_i c_i u_i + z = 0 and 0 <= z <= 1.
  const std::size_t cols = 2 * n + 2 * m;
  lp::Problem p;
  for (std::size_t j = 0; j < m; ++j) {
    RationalVector row(cols, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
      row[i] = u[i][j];
      row[n + i] = -u[i][j];
    }
    row[2 * n + j] = 1;
    p.A.push_back(std::move(row));
    p.b.emplace_back(0);
  }
  for (std::size_t j = 0; j < m; ++j) {
    RationalVector row(cols, Rational(0));
    row[2 * n + j] = 1;
    row[2 * n + m + j] = 1;
    p.A.push_back(std::move(row));
    p.b.emplace_back(1);
  }
  p.cost.assign(cols, Rational(0));
  for (std::size_t j = 0; j < m; ++j) p.cost[2 * n + j] = -1;

  const auto r = lp::solve(p);
  if (r.status != lp::Status::Optimal) throw std::logic_error("combination LP is always feasible and bounded");
  if (r.objective >= 0) return std::nullopt;
  RationalVector c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = r.x[i] - r.x[n + i];
  return CombinationCert{primitive(std::move(c))};
}

std::optional<OrthogonalCert> find_positive_orthogonal(const std::vector<RationalVector>& u) {
  const std::size_t m = common_dimension(u);
  // w = 1 + w' with w' >= 0; homogeneity lets us require w >= 1.
  lp::Problem p;
  for (const auto& v : u) {
    p.A.push_back(v);
    Rational s = 0;
    for (const auto& x : v) s += x;
    p.b.push_back(-s);
  }
  p.cost.assign(m, Rational(0));
  const auto r = lp::solve(p);
  if (r.status != lp::Status::Optimal) return std::nullopt;
  RationalVector w(m);
  for (std::size_t j = 0; j < m; ++j) w[j] = r.x[j] + 1;
  return OrthogonalCert{primitive(std::move(w))};
}

}  // namespace detail

SignPattern full_positive(std::size_t m) {
  SignPattern p;
  for (std::size_t j = 0; j < m; ++j) p.positive.insert(j);
  return p;
}

SignPatternCertificate stiemke(const std::vector<RationalVector>& u) {
  if (auto c = detail::find_combination(u)) return *c;
  if (auto w = detail::find_positive_orthogonal(u)) return *w;
  throw std::logic_error("stiemke: neither alternative found");
}

SignPatternCertificate stiemke_signed(const std::vector<RationalVector>& u, const SignPattern& pattern) {
  const std::size_t m = common_dimension(u);
  check_pattern(pattern, m);
  if (pattern.positive.size() + pattern.negative.size() != m) {
    throw CertificateError(CertificateErrorKind::IncompletePattern, "U and V must cover every coordinate");
  }
  std::vector<RationalVector> reflected;
  reflected.reserve(u.size());
  for (const auto& v : u) reflected.push_back(reflect(v, pattern));
  auto cert = stiemke(reflected);
  if (auto* w = std::get_if<OrthogonalCert>(&cert)) w->w = reflect(std::move(w->w), pattern);
  return cert;
}

std::vector<RationalVector> tier_differences(const std::vector<RationalVector>& complexes,
                                             const TierPartition& tiers) {
  tiers.tier_of(complexes.size());  // throws unless the tiers partition the complexes
  std::vector<RationalVector> out;
  for (const auto& tier : tiers.tiers) {
    if (tier.size() == 1) {
      out.emplace_back(complexes.at(tier[0]).size(), Rational(0));
      continue;
    }
    for (std::size_t a = 0; a < tier.size(); ++a) {
      for (std::size_t b = a + 1; b < tier.size(); ++b) {
        const auto& yj = complexes.at(tier[a]);
        const auto& yk = complexes.at(tier[b]);
        RationalVector d(yj.size());
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = yj[i] - yk[i];
        out.push_back(std::move(d));
      }
    }
  }
  return out;
}

RelationOrCombination respecting_relation(const std::vector<RationalVector>& complexes,
                                          const TierPartition& tiers, const SignPattern& pattern) {
  if (complexes.empty()) throw CertificateError(CertificateErrorKind::DimensionMismatch, "no complexes");
  const std::size_t n = complexes.front().size();
  for (const auto& y : complexes) {
    if (y.size() != n) throw CertificateError(CertificateErrorKind::DimensionMismatch, "complexes differ in dimension");
  }
  if (pattern.positive.empty() && pattern.negative.empty()) {
    throw CertificateError(CertificateErrorKind::EmptyPattern, "U u V must be nonempty");
  }
  check_pattern(pattern, n);

  // Restrict the difference vectors to the coordinates in U u V.
  std::vector<std::size_t> support;
  std::set_union(pattern.positive.begin(), pattern.positive.end(), pattern.negative.begin(),
                 pattern.negative.end(), std::back_inserter(support));
  SignPattern local;
  for (std::size_t j = 0; j < support.size(); ++j) {
    (pattern.positive.count(support[j]) ? local.positive : local.negative).insert(j);
  }
  std::vector<RationalVector> restricted;
  for (const auto& d : tier_differences(complexes, tiers)) {
    RationalVector v;
    for (auto j : support) v.push_back(d[j]);
    restricted.push_back(std::move(v));
  }

  auto cert = stiemke_signed(restricted, local);
  if (auto* c = std::get_if<CombinationCert>(&cert)) return *c;

  const auto& w_local = std::get<OrthogonalCert>(cert).w;
  ConservationRelation rel;
  rel.w.assign(n, Rational(0));
  for (std::size_t j = 0; j < support.size(); ++j) rel.w[support[j]] = w_local[j];
  rel.positive_support = pattern.positive;
  rel.negative_support = pattern.negative;
  return rel;
}

bool verify_combination(const std::vector<RationalVector>& u, const CombinationCert& cert,
                        const SignPattern& pattern) {
  if (cert.c.size() != u.size()) return false;
  const auto s = combine(u, cert.c);
  bool strict = false;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (pattern.positive.count(j)) {
      if (s[j] > 0) return false;
      strict = strict || s[j] < 0;
    } else if (pattern.negative.count(j)) {
      if (s[j] < 0) return false;
      strict = strict || s[j] > 0;
    }
  }
  return strict;
}

bool verify_orthogonal(const std::vector<RationalVector>& u, const OrthogonalCert& cert,
                       const SignPattern& pattern, bool exact_support) {
  for (const auto& v : u) {
    if (v.size() != cert.w.size() || dot(v, cert.w) != 0) return false;
  }
  for (std::size_t j = 0; j < cert.w.size(); ++j) {
    if (pattern.positive.count(j)) {
      if (cert.w[j] <= 0) return false;
    } else if (pattern.negative.count(j)) {
      if (cert.w[j] >= 0) return false;
    } else if (exact_support && cert.w[j] != 0) {
      return false;
    }
  }
  return true;
}

bool verify_signed(const std::vector<RationalVector>& u, const SignPatternCertificate& cert,
                   const SignPattern& pattern) {
  if (const auto* c = std::get_if<CombinationCert>(&cert)) return verify_combination(u, *c, pattern);
  return verify_orthogonal(u, std::get<OrthogonalCert>(cert), pattern, true);
}

bool verify(const std::vector<RationalVector>& u, const SignPatternCertificate& cert) {
  return verify_signed(u, cert, full_positive(u.front().size()));
}

bool verify_relation(const std::vector<RationalVector>& complexes, const TierPartition& tiers,
                     const SignPattern& pattern, const ConservationRelation& rel) {
  std::set<std::size_t> pos, neg;
  for (std::size_t i = 0; i < rel.w.size(); ++i) {
    if (rel.w[i] > 0) pos.insert(i);
    if (rel.w[i] < 0) neg.insert(i);
  }
  if (pos != pattern.positive || neg != pattern.negative) return false;
  if (pos != rel.positive_support || neg != rel.negative_support) return false;
  for (const auto& tier : tiers.tiers) {
    for (auto a : tier) {
      for (auto b : tier) {
        Rational s = 0;
        for (std::size_t i = 0; i < rel.w.size(); ++i) s += rel.w[i] * (complexes[a][i] - complexes[b][i]);
        if (s != 0) return false;
      }
    }
  }
  return true;
}

}  // namespace crn
