#include "lumpex/edge_function.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace lumpex {

EdgeFunction::EdgeFunction(Digraph graph)
    : graph_(std::move(graph)),
      values_(static_cast<std::size_t>(graph_.num_vertices()) *
                  graph_.num_vertices(),
              0.0) {}

EdgeFunction::EdgeFunction(Digraph graph, std::vector<double> dense)
    : graph_(std::move(graph)), values_(std::move(dense)) {
  const int n = graph_.num_vertices();
  if (values_.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("edge function: expected " +
                                std::to_string(n * n) + " dense entries");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = values_[static_cast<std::size_t>(i) * n + j];
      if (!std::isfinite(v)) {
        throw std::invalid_argument("edge function: non-finite entry");
      }
      if (v != 0.0 && !graph_.has_edge(i, j)) {
        throw std::invalid_argument("edge function: non-zero entry at (" +
                                    std::to_string(i) + "," +
                                    std::to_string(j) + ") off the edge set");
      }
    }
  }
}

EdgeFunction EdgeFunction::from_dense(int n, std::vector<double> dense) {
  if (n < 0 || dense.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("from_dense: size mismatch");
  }
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (dense[static_cast<std::size_t>(i) * n + j] != 0.0) {
        edges.push_back({i, j});
      }
    }
  }
  return EdgeFunction(Digraph(n, std::move(edges)), std::move(dense));
}

void EdgeFunction::set(Edge e, double value) {
  if (!graph_.has_edge(e)) {
    throw std::invalid_argument("set: (" + std::to_string(e.from) + "," +
                                std::to_string(e.to) + ") is not an edge");
  }
  values_[static_cast<std::size_t>(e.from) * size() + e.to] = value;
}

double EdgeFunction::row_sum(int row) const {
  double sum = 0.0;
  for (int to : graph_.successors(row)) sum += (*this)(row, to);
  return sum;
}

bool EdgeFunction::is_positive() const {
  for (const Edge& e : graph_.edges()) {
    if (!((*this)(e) > 0.0)) return false;
  }
  return true;
}

std::vector<double> EdgeFunction::edge_values() const {
  std::vector<double> out;
  out.reserve(graph_.num_edges());
  for (const Edge& e : graph_.edges()) out.push_back((*this)(e));
  return out;
}

StochasticMatrix StochasticMatrix::from(EdgeFunction f, double tol) {
  if (!f.is_positive()) {
    throw std::invalid_argument("stochastic matrix must be positive on its support");
  }
  for (int y = 0; y < f.size(); ++y) {
    if (std::abs(f.row_sum(y) - 1.0) > tol) {
      throw std::invalid_argument("row " + std::to_string(y) +
                                  " does not sum to one");
    }
  }
  return StochasticMatrix(std::move(f));
}

}  // namespace lumpex
