#include "lumpex/digraph.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>
#include <string>
#include <utility>

namespace lumpex {

Digraph::Digraph(int num_vertices, std::vector<Edge> edges)
    : num_vertices_(num_vertices), edges_(std::move(edges)) {
  if (num_vertices < 0) {
    throw std::invalid_argument("negative vertex count");
  }
  for (const Edge& e : edges_) {
    if (e.from < 0 || e.to < 0 || e.from >= num_vertices ||
        e.to >= num_vertices) {
      throw std::invalid_argument("edge (" + std::to_string(e.from) + "," +
                                  std::to_string(e.to) +
                                  ") has an endpoint outside the vertex set");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    throw std::invalid_argument("duplicate edge (" + std::to_string(dup->from) +
                                "," + std::to_string(dup->to) + ")");
  }
  successors_.assign(num_vertices_, {});
  for (const Edge& e : edges_) successors_[e.from].push_back(e.to);
}

bool Digraph::has_edge(int from, int to) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{from, to});
}

std::optional<std::size_t> Digraph::edge_index(Edge e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

std::vector<std::vector<int>> scc(const Digraph& g) {
  const int n = g.num_vertices();
  std::vector<int> index(n, -1);
  std::vector<int> lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  std::vector<std::vector<int>> components;
  int counter = 0;

  // Explicit DFS frames: (vertex, next successor position).
  std::vector<std::pair<int, std::size_t>> frames;
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    frames.emplace_back(root, 0);
    index[root] = lowlink[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      auto succ = g.successors(v);
      if (pos < succ.size()) {
        const int w = succ[pos++];
        if (index[w] == -1) {
          index[w] = lowlink[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
        continue;
      }
      const int done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const int parent = frames.back().first;
        lowlink[parent] = std::min(lowlink[parent], lowlink[done]);
      }
      if (lowlink[done] == index[done]) {
        std::vector<int> component;
        int w = -1;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != done);
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
      }
    }
  }
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return components;
}

bool strongly_connected(const Digraph& g) {
  if (g.num_vertices() <= 1) return true;
  return scc(g).size() == 1;
}

InducedSubgraph induced_subgraph(const Digraph& g, std::span<const int> keep) {
  std::vector<int> original(keep.begin(), keep.end());
  std::sort(original.begin(), original.end());
  original.erase(std::unique(original.begin(), original.end()), original.end());

  std::vector<int> relabel(g.num_vertices(), -1);
  for (std::size_t i = 0; i < original.size(); ++i) {
    const int v = original[i];
    if (v < 0 || v >= g.num_vertices()) {
      throw std::invalid_argument("induced_subgraph: vertex " +
                                  std::to_string(v) + " not in graph");
    }
    relabel[v] = static_cast<int>(i);
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (relabel[e.from] >= 0 && relabel[e.to] >= 0) {
      edges.push_back({relabel[e.from], relabel[e.to]});
    }
  }
  return {Digraph(static_cast<int>(original.size()), std::move(edges)),
          std::move(original)};
}

Digraph remove_edges(const Digraph& g, std::span<const Edge> removed) {
  std::vector<Edge> drop(removed.begin(), removed.end());
  std::sort(drop.begin(), drop.end());
  drop.erase(std::unique(drop.begin(), drop.end()), drop.end());
  for (const Edge& e : drop) {
    if (!g.has_edge(e)) {
      throw std::invalid_argument("remove_edges: edge (" +
                                  std::to_string(e.from) + "," +
                                  std::to_string(e.to) + ") is not in the graph");
    }
  }
  std::vector<Edge> kept;
  kept.reserve(g.num_edges() - drop.size());
  std::set_difference(g.edges().begin(), g.edges().end(), drop.begin(),
                      drop.end(), std::back_inserter(kept));
  return Digraph(g.num_vertices(), std::move(kept));
}

}  // namespace lumpex
