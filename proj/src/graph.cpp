#include "crnbound/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace crn {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

ReactionDiagram reaction_diagram(const ReactionNetwork& net) {
  ReactionDiagram g;
  g.num_nodes = net.num_complexes();
  g.successors.resize(g.num_nodes);
  for (const auto& r : net.reactions()) {
    g.edges.emplace_back(r.source, r.product);
    g.successors[r.source].push_back(r.product);
  }
  return g;
}

LinkageDecomposition linkage_classes(const ReactionNetwork& net) {
  const std::size_t n = net.num_complexes();
  DisjointSets sets(n);
  for (const auto& r : net.reactions()) sets.unite(r.source, r.product);

  LinkageDecomposition out;
  out.class_of.assign(n, 0);
  std::vector<std::size_t> root_to_class(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t root = sets.find(c);
    if (root_to_class[root] == n) {
      root_to_class[root] = out.classes.size();
      out.classes.emplace_back();
    }
    out.class_of[c] = root_to_class[root];
    out.classes[root_to_class[root]].push_back(c);
  }
  return out;
}

std::vector<std::vector<std::size_t>> strongly_connected_components(const ReactionDiagram& g) {
  const std::size_t n = g.num_nodes;
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> sccs;
  std::size_t counter = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (auto w : g.successors[v]) {
      if (index[w] == unvisited) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> scc;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        scc.push_back(w);
      } while (w != v);
      std::sort(scc.begin(), scc.end());
      sccs.push_back(std::move(scc));
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (index[v] == unvisited) visit(v);
  }
  return sccs;
}

std::vector<bool> reachable_from(const ReactionDiagram& g, std::size_t start) {
  std::vector<bool> seen(g.num_nodes, false);
  std::vector<std::size_t> todo{start};
  seen[start] = true;
  while (!todo.empty()) {
    const auto v = todo.back();
    todo.pop_back();
    for (auto w : g.successors[v]) {
      if (!seen[w]) {
        seen[w] = true;
        todo.push_back(w);
      }
    }
  }
  return seen;
}

WeakReversibility is_weakly_reversible(const ReactionNetwork& net) {
  const auto g = reaction_diagram(net);
  const auto linkage = linkage_classes(net);
  const auto sccs = strongly_connected_components(g);

  WeakReversibility out;
  // Each linkage class is a union of SCCs, so equal counts means each class
  // is exactly one SCC.
  out.weakly_reversible = sccs.size() == linkage.classes.size();
  if (out.weakly_reversible) return out;

  for (std::size_t a = 0; a < g.num_nodes; ++a) {
    const auto reach = reachable_from(g, a);
    for (std::size_t b = 0; b < g.num_nodes; ++b) {
      if (linkage.class_of[a] == linkage.class_of[b] && !reach[b]) {
        out.witness = std::make_pair(a, b);
        return out;
      }
    }
  }
  return out;
}

bool is_reversible(const ReactionNetwork& net) {
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& r : net.reactions()) edges.emplace(r.source, r.product);
  return std::all_of(edges.begin(), edges.end(),
                     [&](const auto& e) { return edges.count({e.second, e.first}) > 0; });
}

bool is_union_of_linkage_classes(const ReactionNetwork& net, const std::set<std::size_t>& complexes) {
  if (complexes.empty()) throw std::invalid_argument("is_union_of_linkage_classes: empty set");
  const auto linkage = linkage_classes(net);
  for (auto c : complexes) {
    if (c >= net.num_complexes()) throw std::out_of_range("complex index out of range");
  }
  for (auto c : complexes) {
    for (auto member : linkage.classes[linkage.class_of[c]]) {
      if (!complexes.count(member)) return false;
    }
  }
  return true;
}

}  // namespace crn
