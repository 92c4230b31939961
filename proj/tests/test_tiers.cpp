#include "crnbound/random.hpp"
#include "crnbound/tiers.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace crn;

namespace {

PointSequence sequence_of(std::size_t n_max, auto f) {
  PointSequence s;
  for (std::size_t n = 1; n <= n_max; ++n) s.points.push_back(f(static_cast<double>(n)));
  return s;
}

TierPartition partition_of(const TierResult& r) {
  REQUIRE(std::holds_alternative<TierPartition>(r));
  return std::get<TierPartition>(r);
}

double log_monomial(const std::vector<double>& x, const IntVector& y) {
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<double>(y[i]) * std::log(x[i]);
  return s;
}

// Tiers of a unit-scale power law, grouped and ordered by y . alpha.
std::vector<std::vector<std::size_t>> analytic_tiers(const std::vector<IntVector>& ys, const std::vector<double>& a) {
  std::map<double, std::vector<std::size_t>, std::greater<>> by_rate;
  for (std::size_t j = 0; j < ys.size(); ++j) {
    double r = 0;
    for (std::size_t i = 0; i < a.size(); ++i) r += static_cast<double>(ys[j][i]) * a[i];
    by_rate[r].push_back(j);
  }
  std::vector<std::vector<std::size_t>> out;
  for (auto& [r, t] : by_rate) out.push_back(t);
  return out;
}

}  // namespace

TEST_CASE("three-tier example along (n, 1/n)") {
  const std::vector<IntVector> ys{{1, 0}, {0, 1}, {1, 1}};
  const auto seq = sequence_of(100, [](double n) { return std::vector<double>{n, 1 / n}; });
  const auto p = partition_of(tier_partition(seq, ys, 2.0));
  CHECK(p.tiers == std::vector<std::vector<std::size_t>>{{0}, {2}, {1}});
  CHECK(p.constant_C == 2.0);
}

TEST_CASE("degenerate partitions") {
  const auto seq = sequence_of(10, [](double n) { return std::vector<double>{n, 2 * n}; });
  CHECK(partition_of(tier_partition(seq, {{1, 2}}, 5.0)).tiers == std::vector<std::vector<std::size_t>>{{0}});

  const auto ones = sequence_of(10, [](double) { return std::vector<double>{1, 1}; });
  CHECK(partition_of(tier_partition(ones, {{1, 0}, {0, 3}, {2, 2}}, 2.0)).tiers ==
        std::vector<std::vector<std::size_t>>{{0, 1, 2}});
}

TEST_CASE("tier_partition errors") {
  const auto seq = sequence_of(10, [](double n) { return std::vector<double>{n, 1 / n}; });
  CHECK_THROWS_AS(tier_partition(seq, {{1, 0}}, 1.0), TierError);
  auto bad = seq;
  bad.points[3][1] = 0.0;
  try {
    tier_partition(bad, {{1, 0}}, 2.0);
    FAIL("expected TierError");
  } catch (const TierError& e) {
    CHECK(e.kind() == TierErrorKind::NonPositivePoint);
  }
  try {
    tier_partition(seq, {{1, 0}}, 0.5);
    FAIL("expected TierError");
  } catch (const TierError& e) {
    CHECK(e.kind() == TierErrorKind::BadConstant);
  }
}

TEST_CASE("non-transitive sharing gives NoPartition") {
  // ratios ln(n^0.) chosen so that 0~1 and 1~2 inside ln C but 0,2 apart
  const double lnC = std::log(2.0);
  const auto seq = sequence_of(20, [&](double) { return std::vector<double>{std::exp(0.6 * lnC), 1.0}; });
  const auto r = tier_partition(seq, {{0, 0}, {1, 0}, {2, 0}}, 2.0);
  CHECK(std::holds_alternative<NoPartition>(r));
}

TEST_CASE("partition properties on random power laws") {
  Rng rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const auto N = static_cast<std::size_t>(rng.integer(1, 4));
    PowerLawSpec spec;
    for (std::size_t i = 0; i < N; ++i) spec.exponents.push_back(static_cast<double>(rng.integer(-2, 2)));
    spec.n_max = 200;
    const auto seq = powerlaw_sequence(spec);
    const auto k = static_cast<std::size_t>(rng.integer(1, 5));
    std::vector<IntVector> ys(k, IntVector(N));
    for (auto& y : ys) {
      for (auto& c : y) c = rng.integer(0, 3);
    }
    const auto p = partition_of(tier_partition(seq, ys, 2.0));
    CHECK(p.tiers == analytic_tiers(ys, spec.exponents));

    // sharing is an equivalence on the tail window: every pair inside a tier is within ln C
    const auto where = p.tier_of(k);
    const double lnC = std::log(2.0);
    const auto& last = seq.points.back();
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        const double d = log_monomial(last, ys[a]) - log_monomial(last, ys[b]);
        if (where[a] == where[b]) CHECK(std::abs(d) <= lnC + 1e-9);
        if (where[a] + 1 == where[b]) CHECK(d > lnC);  // consecutive tiers exceed C at the final point
      }
    }

    // duplicating each point leaves the partition unchanged
    PointSequence doubled;
    for (const auto& x : seq.points) {
      doubled.points.push_back(x);
      doubled.points.push_back(x);
    }
    CHECK(partition_of(tier_partition(doubled, ys, 2.0)) == p);
  }
}

TEST_CASE("tier_of validates the partition") {
  TierPartition p{{{0, 2}, {1}}, 2.0};
  CHECK(p.tier_of(3) == std::vector<std::size_t>{0, 1, 0});
  CHECK_THROWS(TierPartition{{{0}, {0, 1}}, 2.0}.tier_of(2));
  CHECK_THROWS(TierPartition{{{0}}, 2.0}.tier_of(2));
  CHECK_THROWS(TierPartition{{{0, 1}, {}}, 2.0}.tier_of(2));
}

TEST_CASE("partition_subsequence on an alternating sequence") {
  PointSequence seq;
  for (int n = 1; n <= 200; ++n) {
    if (n % 2 == 1) {
      seq.points.push_back({static_cast<double>(n), 1.0 / n});
    } else {
      seq.points.push_back({1.0, 1.0});
    }
  }
  const std::vector<IntVector> ys{{1, 0}, {0, 1}, {1, 1}};
  CHECK(std::holds_alternative<NoPartition>(tier_partition(seq, ys, 2.0)));
  const auto sp = partition_subsequence(seq, ys, 2.0);
  CHECK(sp.partition.tiers == std::vector<std::vector<std::size_t>>{{0}, {2}, {1}});
  for (auto i : sp.indices) CHECK(i % 2 == 0);  // zero-based even = odd n
  CHECK(sp.indices.size() > 10);
}

TEST_CASE("partition_subsequence keeps an already partitioned sequence") {
  const auto seq = sequence_of(50, [](double n) { return std::vector<double>{n, 1 / n}; });
  const auto sp = partition_subsequence(seq, {{1, 0}, {0, 1}}, 2.0);
  CHECK(sp.indices.size() == 50);
  for (std::size_t i = 0; i < sp.indices.size(); ++i) CHECK(sp.indices[i] == i);
}

TEST_CASE("partition_subsequence needs two points") {
  PointSequence one;
  one.points.push_back({1.0});
  try {
    partition_subsequence(one, {{1}}, 2.0);
    FAIL("expected TierError");
  } catch (const TierError& e) {
    CHECK(e.kind() == TierErrorKind::InsufficientData);
  }
}

TEST_CASE("partially monotonic subsequence") {
  auto mono = sequence_of(50, [](double n) { return std::vector<double>{1 / n, n}; });
  mono.limits = std::vector<Limit>{Limit::ToZero, Limit::ToInfinity};
  CHECK(partially_monotonic_subsequence(mono).size() == 50);
  CHECK(is_partially_monotonic(mono));

  auto wiggle = sequence_of(60, [](double n) {
    const double sign = (static_cast<long>(n) % 2 == 0) ? 1.0 : -1.0;
    return std::vector<double>{1 / n + sign / (2 * n), n};
  });
  wiggle.limits = std::vector<Limit>{Limit::ToZero, Limit::ToInfinity};
  CHECK_FALSE(is_partially_monotonic(wiggle));
  const auto idx = partially_monotonic_subsequence(wiggle);
  const auto sub = subsequence(wiggle, idx);
  CHECK(is_partially_monotonic(sub));
  // greedy oracle: keep a point when it does not break monotonicity
  std::size_t greedy = 1;
  double last0 = wiggle.points[0][0], last1 = wiggle.points[0][1];
  for (std::size_t i = 1; i < wiggle.size(); ++i) {
    if (wiggle.points[i][0] <= last0 && wiggle.points[i][1] >= last1) {
      ++greedy;
      last0 = wiggle.points[i][0];
      last1 = wiggle.points[i][1];
    }
  }
  CHECK(idx.size() >= greedy);
  for (std::size_t i = 1; i < idx.size(); ++i) CHECK(idx[i - 1] < idx[i]);

  auto bounded = sequence_of(30, [](double n) { return std::vector<double>{2 + std::sin(n), 1 + std::cos(n)}; });
  bounded.limits = std::vector<Limit>{Limit::Bounded, Limit::Bounded};
  CHECK(partially_monotonic_subsequence(bounded).size() == 30);
}

TEST_CASE("estimate_limits") {
  const auto seq = sequence_of(100, [](double n) { return std::vector<double>{1 / (n * n), n * n, 3.0}; });
  CHECK(estimate_limits(seq.points) == std::vector<Limit>{Limit::ToZero, Limit::ToInfinity, Limit::Bounded});
}

TEST_CASE("theorem check examples") {
  {
    PowerLawSpec spec{{-1, 1}, 100, {1, 3}};
    const auto seq = powerlaw_sequence(spec);
    const auto r = theorem_conservation_check(seq, {{1, 1}}, 2.0);
    REQUIRE(std::holds_alternative<ConservationVerified>(r));
    const auto& w = std::get<ConservationVerified>(r).relation.w;
    CHECK(w[0] > 0);
    CHECK(w[1] < 0);
  }
  {
    const auto seq = powerlaw_sequence(PowerLawSpec{{-1, -1}, 100, {}});
    const auto r = theorem_conservation_check(seq, {{1, 0}, {0, 1}}, 2.0);
    REQUIRE(std::holds_alternative<ConservationVerified>(r));
    const auto& v = std::get<ConservationVerified>(r);
    CHECK(v.tiers.tiers.size() == 1);
    CHECK(v.relation.w[0] == v.relation.w[1]);
    CHECK(v.relation.w[0] > 0);
  }
  {
    const auto seq = powerlaw_sequence(PowerLawSpec{{0, 0}, 100, {}});
    try {
      theorem_conservation_check(seq, {{1, 0}}, 2.0);
      FAIL("expected TierError");
    } catch (const TierError& e) {
      CHECK(e.kind() == TierErrorKind::PreconditionUnmet);
    }
  }
}

TEST_CASE("theorem never yields a counterexample on power-law sequences") {
  Rng rng(4242);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto N = static_cast<std::size_t>(rng.integer(1, 4));
    PowerLawSpec spec;
    spec.n_max = 120;
    bool divergent = false;
    for (std::size_t i = 0; i < N; ++i) {
      const auto a = rng.integer(-2, 2);
      divergent = divergent || a != 0;
      spec.exponents.push_back(static_cast<double>(a));
    }
    if (!divergent) spec.exponents[0] = 1;
    const auto k = static_cast<std::size_t>(rng.integer(1, 5));
    std::vector<IntVector> ys(k, IntVector(N));
    for (auto& y : ys) {
      for (auto& c : y) c = rng.integer(0, 3);
    }
    const auto r = theorem_conservation_check(powerlaw_sequence(spec), ys, 2.0);
    CHECK(std::holds_alternative<ConservationVerified>(r));
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("powerlaw spec parsing") {
  const auto spec = parse_powerlaw_spec(R"({"type":"powerlaw","exponents":[1,-2,0],"n_max":50})");
  CHECK(spec.exponents == std::vector<double>{1, -2, 0});
  CHECK(spec.n_max == 50);
  const auto seq = powerlaw_sequence(spec);
  CHECK(seq.size() == 50);
  CHECK(seq.points[9][1] == doctest::Approx(0.01));
  REQUIRE(seq.limits.has_value());
  CHECK(*seq.limits == std::vector<Limit>{Limit::ToInfinity, Limit::ToZero, Limit::Bounded});
  CHECK_THROWS(parse_powerlaw_spec(R"({"type":"other","exponents":[1],"n_max":5})"));
  CHECK_THROWS(parse_powerlaw_spec("not json"));
}
