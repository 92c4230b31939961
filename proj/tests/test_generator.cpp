#include "crnbound/campaign.hpp"
#include "crnbound/generator.hpp"
#include "crnbound/graph.hpp"
#include "crnbound/parser.hpp"
#include "crnbound/random.hpp"

#include <doctest.h>

#include <map>
#include <set>
#include <string>
#include <tuple>

using namespace crn;

namespace {

// Reactions keyed by species name with their rate text, independent of species order.
using NamedComplex = std::map<std::string, std::int64_t>;
std::multiset<std::tuple<NamedComplex, NamedComplex, std::string>> named_reactions(const ReactionNetwork& net,
                                                                                   const Kinetics& kin) {
  const auto named = [&](const Complex& y) {
    NamedComplex m;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] != 0) m[net.species()[i].name] = y[i];
    }
    return m;
  };
  std::multiset<std::tuple<NamedComplex, NamedComplex, std::string>> out;
  for (std::size_t k = 0; k < net.num_reactions(); ++k) {
    out.insert({named(net.source(k)), named(net.product(k)), describe(kin[k])});
  }
  return out;
}

}  // namespace

TEST_CASE("two complexes give a two-cycle") {
  RandomNetworkSpec spec;
  spec.N = 2;
  spec.num_complexes = 2;
  spec.extra_edges = 0;
  const auto g = generate_random_network(spec);
  CHECK(g.network.num_complexes() == 2);
  CHECK(g.network.num_reactions() == 2);
  CHECK(is_weakly_reversible(g.network).weakly_reversible);
  CHECK(is_reversible(g.network));
}

TEST_CASE("generated networks satisfy the structural hypotheses") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    RandomNetworkSpec spec;
    Rng rng(s);
    spec.N = static_cast<std::size_t>(rng.integer(1, 4));
    spec.num_complexes = static_cast<std::size_t>(rng.integer(2, spec.N == 1 ? 4 : 5));
    spec.max_coeff = 3;
    spec.extra_edges = static_cast<std::size_t>(rng.integer(0, 3));
    spec.seed = derive_seed(1234, s);
    spec.kinetics = static_cast<KineticsMode>(s % 3);
    const auto g = generate_random_network(spec);
    const auto& net = g.network;
    CHECK(net.num_species() == spec.N);
    CHECK(net.num_complexes() == spec.num_complexes);
    CHECK(is_weakly_reversible(net).weakly_reversible);
    CHECK(linkage_classes(net).classes.size() == 1);
    std::set<IntVector> distinct;
    for (const auto& y : net.complexes()) {
      distinct.insert(y.coefficients);
      for (auto c : y.coefficients) {
        CHECK(c >= 0);
        CHECK(c <= spec.max_coeff);
      }
    }
    CHECK(distinct.size() == net.num_complexes());
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& r : net.reactions()) edges.insert({r.source, r.product});
    CHECK(edges.size() == net.num_reactions());
    REQUIRE(g.kinetics.size() == net.num_reactions());
    CHECK(g.kinetics.is_bounded());
    for (std::size_t k = 0; k < g.kinetics.size(); ++k) {
      CHECK(g.kinetics.lower(k) >= 0.5);
      CHECK(g.kinetics.upper(k) <= 2.0);
      if (spec.kinetics == KineticsMode::Constant) CHECK(std::holds_alternative<ConstantRate>(g.kinetics[k]));
      if (spec.kinetics == KineticsMode::Banded) CHECK(std::holds_alternative<BandedRate>(g.kinetics[k]));
    }
  }
}

TEST_CASE("fixed seed gives an identical network") {
  RandomNetworkSpec spec;
  spec.N = 4;
  spec.num_complexes = 5;
  spec.seed = 42;
  const auto a = generate_random_network(spec);
  const auto b = generate_random_network(spec);
  CHECK(render(a.network, a.kinetics) == render(b.network, b.kinetics));
  spec.seed = 43;
  const auto c = generate_random_network(spec);
  CHECK(render(a.network, a.kinetics) != render(c.network, c.kinetics));
}

TEST_CASE("infeasible specs are rejected") {
  RandomNetworkSpec spec;
  spec.N = 1;
  spec.max_coeff = 1;
  spec.num_complexes = 3;  // only (0) and (1) exist
  CHECK_THROWS_AS(generate_random_network(spec), SpecInfeasible);
  spec.num_complexes = 1;
  CHECK_THROWS_AS(generate_random_network(spec), SpecInfeasible);
  spec = RandomNetworkSpec{};
  spec.N = 0;
  CHECK_THROWS_AS(generate_random_network(spec), SpecInfeasible);
  spec = RandomNetworkSpec{};
  spec.rate_lower = 3;
  CHECK_THROWS_AS(generate_random_network(spec), SpecInfeasible);
}

TEST_CASE("campaign spec parsing") {
  const auto s = parse_campaign_spec(R"({"N": [2, 3], "num_complexes": 4, "max_coeff": 2, "kinetics": "banded"})");
  CHECK(s.N == std::pair<std::size_t, std::size_t>{2, 3});
  CHECK(s.num_complexes == std::pair<std::size_t, std::size_t>{4, 4});
  CHECK(s.max_coeff == 2);
  CHECK(s.kinetics == KineticsMode::Banded);
  CHECK_THROWS_AS(parse_campaign_spec("{"), std::invalid_argument);
  CHECK_THROWS_AS(parse_campaign_spec(R"({"N": [3, 2]})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_campaign_spec(R"({"kinetics": "wild"})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_campaign_spec(R"({"N": 1, "num_complexes": 3, "max_coeff": 1})"), std::invalid_argument);
}

TEST_CASE("campaign network seeds do not depend on count") {
  CampaignSpec spec;
  TrialSpec trials;
  trials.trials = 1;
  trials.horizon = 5;
  trials.samples_per_shell = 200;
  trials.no_union_sequences = 2;
  const auto small = run_campaign(spec, 2, 9, trials);
  const auto large = run_campaign(spec, 3, 9, trials);
  REQUIRE(small.entries.size() == 2);
  REQUIRE(large.entries.size() == 3);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(small.entries[i].network_seed == large.entries[i].network_seed);
    CHECK(small.entries[i].network_text == large.entries[i].network_text);
    CHECK(small.entries[i].report.hypotheses.all());
  }
  CHECK(run_campaign(spec, 0, 9, trials).entries.empty());
}

TEST_CASE("generated network text reparses to the same network") {
  CampaignSpec spec;
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto g = generate_random_network(network_spec_for(spec, derive_seed(77, s)));
    const auto text = render(g.network, g.kinetics);
    auto [net, kin] = parse_network(text);
    CHECK(named_reactions(net, kin) == named_reactions(g.network, g.kinetics));
    const auto again = render(net, kin);
    auto [net2, kin2] = parse_network(again);
    CHECK(render(net2, kin2) == again);
  }
}
