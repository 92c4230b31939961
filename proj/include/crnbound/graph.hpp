#pragma once

#include "crnbound/network.hpp"

#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace crn {

/// Directed graph on complexes; one edge per reaction.
struct ReactionDiagram {
  std::size_t num_nodes = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::vector<std::size_t>> successors;
};

ReactionDiagram reaction_diagram(const ReactionNetwork& net);

struct LinkageDecomposition {
  std::vector<std::vector<std::size_t>> classes;  // each sorted; ordered by smallest member
  std::vector<std::size_t> class_of;
};

LinkageDecomposition linkage_classes(const ReactionNetwork& net);

/// Tarjan's algorithm. Components are returned in completion order.
std::vector<std::vector<std::size_t>> strongly_connected_components(const ReactionDiagram& g);

struct WeakReversibility {
  bool weakly_reversible = false;
  // Lexicographically smallest (from, to) pair in one linkage class with no
  // directed path from -> to. Present iff weakly_reversible is false.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

WeakReversibility is_weakly_reversible(const ReactionNetwork& net);

bool is_reversible(const ReactionNetwork& net);

/// Throws std::invalid_argument for an empty set.
bool is_union_of_linkage_classes(const ReactionNetwork& net, const std::set<std::size_t>& complexes);

/// Nodes reachable from start along directed edges (start included).
std::vector<bool> reachable_from(const ReactionDiagram& g, std::size_t start);

}  // namespace crn
