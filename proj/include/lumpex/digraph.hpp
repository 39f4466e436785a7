#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace lumpex {

/// Ordered pair (from, to) of vertices. Self-loops are allowed.
struct Edge {
  int from = 0;
  int to = 0;

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// Finite digraph on vertices 0..n-1 without multi-edges.
///
/// Edges are kept sorted lexicographically by (from, to); that order fixes
/// the coordinate layout of every edge function and basis vector built on
/// top of the graph.
class Digraph {
 public:
  Digraph() = default;

  /// Throws std::invalid_argument on out-of-range endpoints or duplicates.
  Digraph(int num_vertices, std::vector<Edge> edges);

  int num_vertices() const { return num_vertices_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const int> successors(int v) const { return successors_[v]; }

  bool has_edge(int from, int to) const;
  bool has_edge(Edge e) const { return has_edge(e.from, e.to); }

  /// Position of an edge in the lexicographic edge list.
  std::optional<std::size_t> edge_index(Edge e) const;

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.num_vertices_ == b.num_vertices_ && a.edges_ == b.edges_;
  }

 private:
  int num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> successors_;
};

/// Strongly connected components (Tarjan), each sorted ascending, the list
/// sorted by smallest member.
std::vector<std::vector<int>> scc(const Digraph& g);

/// Every vertex reaches every other one. A graph with at most one vertex
/// counts as strongly connected.
bool strongly_connected(const Digraph& g);

struct InducedSubgraph {
  Digraph graph;
  /// original_vertex[i] is the vertex of the parent graph relabeled to i.
  std::vector<int> original_vertex;
};

/// Subgraph on `keep`, relabeled 0..|keep|-1 in ascending original order.
InducedSubgraph induced_subgraph(const Digraph& g, std::span<const int> keep);

/// Same vertex set, edges(g) minus `removed`. Every removed edge must exist.
Digraph remove_edges(const Digraph& g, std::span<const Edge> removed);

}  // namespace lumpex
