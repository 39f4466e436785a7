#pragma once

#include <span>
#include <vector>

#include "lumpex/digraph.hpp"

namespace lumpex {

/// Real function on the edges of a digraph, stored as a dense n x n
/// row-major array that vanishes off the edge set.
class EdgeFunction {
 public:
  EdgeFunction() = default;

  /// Zero on every edge of `graph`.
  explicit EdgeFunction(Digraph graph);

  /// `dense` has n*n entries; every entry off the edge set must be zero and
  /// every entry must be finite.
  EdgeFunction(Digraph graph, std::vector<double> dense);

  /// Support taken to be the non-zero entries of `dense`.
  static EdgeFunction from_dense(int n, std::vector<double> dense);

  const Digraph& graph() const { return graph_; }
  int size() const { return graph_.num_vertices(); }

  double operator()(int from, int to) const {
    return values_[static_cast<std::size_t>(from) * size() + to];
  }
  double operator()(Edge e) const { return (*this)(e.from, e.to); }

  /// Throws std::invalid_argument when `e` is not an edge.
  void set(Edge e, double value);

  std::span<const double> dense() const { return values_; }
  double row_sum(int row) const;

  /// Strictly positive on every edge.
  bool is_positive() const;

  /// Values listed in the lexicographic edge order of graph().
  std::vector<double> edge_values() const;

 private:
  Digraph graph_;
  std::vector<double> values_;
};

/// Positive edge function whose rows each sum to one.
class StochasticMatrix {
 public:
  /// Throws std::invalid_argument unless `f` is positive on its support and
  /// each row sums to 1 within `tol`.
  static StochasticMatrix from(EdgeFunction f, double tol = 1e-10);

  const EdgeFunction& function() const { return f_; }
  operator const EdgeFunction&() const { return f_; }

  const Digraph& graph() const { return f_.graph(); }
  int size() const { return f_.size(); }
  double operator()(int from, int to) const { return f_(from, to); }

 private:
  explicit StochasticMatrix(EdgeFunction f) : f_(std::move(f)) {}
  EdgeFunction f_;
};

}  // namespace lumpex
