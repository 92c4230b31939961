#include "crnbound/graph.hpp"
#include "crnbound/random.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace crn;
using testing::net_of;

namespace {

// Floyd-Warshall transitive closure; independent of the Tarjan implementation.
std::vector<std::vector<bool>> closure(const ReactionNetwork& net) {
  const std::size_t n = net.num_complexes();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
  for (const auto& e : net.reactions()) r[e.source][e.product] = true;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) r[i][j] = r[i][j] || (r[i][k] && r[k][j]);
    }
  }
  return r;
}

// Random digraph on single-species complexes; not weakly reversible in general.
ReactionNetwork random_digraph(std::uint64_t seed, int nodes, int edges) {
  Rng rng(seed);
  std::string text;
  for (int e = 0; e < edges; ++e) {
    const auto a = rng.integer(0, nodes - 1);
    auto b = rng.integer(0, nodes - 2);
    if (b >= a) ++b;
    text += "X" + std::to_string(a) + " -> X" + std::to_string(b) + "\n";
  }
  return net_of(text);
}

// Union-find on undirected edges.
std::vector<std::size_t> components(const ReactionNetwork& net) {
  std::vector<std::size_t> parent(net.num_complexes());
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : net.reactions()) parent[find(e.source)] = find(e.product);
  std::vector<std::size_t> root(net.num_complexes());
  for (std::size_t i = 0; i < root.size(); ++i) root[i] = find(i);
  return root;
}

}  // namespace

TEST_CASE("reaction diagram mirrors the reaction set") {
  auto net = net_of("A -> B\nB -> C\nC -> A\nA -> C");
  const auto g = reaction_diagram(net);
  CHECK(g.num_nodes == 3);
  REQUIRE(g.edges.size() == net.num_reactions());
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    CHECK(g.edges[k].first == net.reactions()[k].source);
    CHECK(g.edges[k].second == net.reactions()[k].product);
    CHECK(g.edges[k].first != g.edges[k].second);
  }
}

TEST_CASE("linkage classes of small networks") {
  CHECK(linkage_classes(net_of("S1 <-> S2")).classes.size() == 1);

  const auto two = linkage_classes(net_of("A <-> B\nC <-> D"));
  REQUIRE(two.classes.size() == 2);
  CHECK(two.classes[0] == std::vector<std::size_t>{0, 1});
  CHECK(two.classes[1] == std::vector<std::size_t>{2, 3});
  CHECK(two.class_of == std::vector<std::size_t>{0, 0, 1, 1});

  auto tri = net_of("A -> B\nB -> C\nC -> A");
  const auto lt = linkage_classes(tri);
  CHECK(lt.classes.size() == 1);
  const auto root = components(tri);
  CHECK(std::all_of(root.begin(), root.end(), [&](auto r) { return r == root[0]; }));
}

TEST_CASE("linkage classes are ordered by smallest member") {
  auto net = net_of("A -> B\nC -> D\nB -> E\nD -> C\nE -> A");
  const auto lc = linkage_classes(net);
  REQUIRE(lc.classes.size() == 2);
  CHECK(lc.classes[0].front() < lc.classes[1].front());
}

TEST_CASE("weak reversibility") {
  CHECK(is_weakly_reversible(net_of("S1 <-> S2")).weakly_reversible);
  const auto tri = is_weakly_reversible(net_of("A -> B\nB -> C\nC -> A"));
  CHECK(tri.weakly_reversible);
  CHECK_FALSE(tri.witness.has_value());

  // complexes in order A, B, C
  auto net = net_of("A -> B\nC <-> A");
  const auto r = is_weakly_reversible(net);
  CHECK_FALSE(r.weakly_reversible);
  REQUIRE(r.witness.has_value());
  CHECK(*r.witness == std::pair<std::size_t, std::size_t>{1, 0});
  const auto reach = closure(net);
  CHECK_FALSE(reach[1][0]);
  CHECK(reach[0][1]);
}

TEST_CASE("reversibility") {
  CHECK(is_reversible(net_of("S1 <-> S2")));
  CHECK_FALSE(is_reversible(net_of("A -> B\nB -> C\nC -> A")));
}

TEST_CASE("union of linkage classes") {
  auto single = net_of("A + B -> C\nC -> 2 D\n2 D -> A + B");
  CHECK(is_union_of_linkage_classes(single, {0, 1, 2}));
  CHECK_FALSE(is_union_of_linkage_classes(single, {0, 2}));
  CHECK_FALSE(is_union_of_linkage_classes(single, {1}));
  CHECK_THROWS_AS(is_union_of_linkage_classes(single, {}), std::invalid_argument);

  auto two = net_of("A <-> B\nC <-> D");
  CHECK(is_union_of_linkage_classes(two, {2, 3}));
  CHECK(is_union_of_linkage_classes(two, {0, 1, 2, 3}));
  CHECK_FALSE(is_union_of_linkage_classes(two, {0, 1, 2}));
}

TEST_CASE("SCC count matches closure-based strong components") {
  for (int trial = 0; trial < 60; ++trial) {
    const auto net = random_digraph(derive_seed(99, trial), 6, 7);
    const auto reach = closure(net);
    const auto sccs = strongly_connected_components(reaction_diagram(net));
    std::size_t expected = 0;
    for (std::size_t i = 0; i < net.num_complexes(); ++i) {
      bool leader = true;
      for (std::size_t j = 0; j < i; ++j) leader = leader && !(reach[i][j] && reach[j][i]);
      expected += leader ? 1 : 0;
    }
    CHECK(sccs.size() == expected);
    for (const auto& c : sccs) {
      for (auto a : c) {
        for (auto b : c) CHECK(reach[a][b]);
      }
    }
  }
}

TEST_CASE("weakly reversible iff every reaction can be undone by a path") {
  for (int trial = 0; trial < 80; ++trial) {
    const auto net = random_digraph(derive_seed(7, trial), 5, 1 + trial % 9);
    const auto reach = closure(net);
    bool oracle = true;
    for (const auto& e : net.reactions()) oracle = oracle && reach[e.product][e.source];
    const auto wr = is_weakly_reversible(net);
    CHECK(wr.weakly_reversible == oracle);
    if (!wr.weakly_reversible) {
      const auto [a, b] = *wr.witness;
      CHECK_FALSE(reach[a][b]);
      CHECK(linkage_classes(net).class_of[a] == linkage_classes(net).class_of[b]);
    }
    if (is_reversible(net)) CHECK(wr.weakly_reversible);
  }
}

TEST_CASE("reversible implies weakly reversible on randomized reversible networks") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::string text;
    const int n = static_cast<int>(rng.integer(1, 4));
    for (int r = 0; r < n; ++r) {
      text += std::to_string(rng.integer(1, 2)) + " X" + std::to_string(rng.integer(0, 3)) + " <-> " +
              std::to_string(rng.integer(1, 2)) + " Y" + std::to_string(rng.integer(0, 3)) + "\n";
    }
    auto net = net_of(text);
    CHECK(is_reversible(net));
    CHECK(is_weakly_reversible(net).weakly_reversible);
  }
}

TEST_CASE("linkage classes are invariant under reaction reordering") {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const auto net = random_digraph(derive_seed(5, trial), 7, 6);
    RawNetwork raw;
    for (const auto& s : net.species()) raw.species.push_back(s.name);
    for (const auto& y : net.complexes()) raw.complexes.push_back(y.coefficients);
    raw.reactions = net.reactions();
    for (std::size_t i = raw.reactions.size() - 1; i > 0; --i) {
      std::swap(raw.reactions[i], raw.reactions[rng.below(i + 1)]);
    }
    const auto shuffled = validate_network(raw);
    CHECK(linkage_classes(shuffled).classes == linkage_classes(net).classes);
    CHECK(is_weakly_reversible(shuffled).weakly_reversible == is_weakly_reversible(net).weakly_reversible);
  }
}
