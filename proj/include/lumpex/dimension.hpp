#pragma once

#include <vector>

#include "lumpex/digraph.hpp"
#include "lumpex/exact.hpp"
#include "lumpex/lumping.hpp"

namespace lumpex {

struct DimensionReport {
  /// dim W_κ(Y,E).
  int manifold_dim = 0;
  /// |U| + |R|.
  int span_dim = 0;
  /// |Y|.
  int n_dim = 0;
  /// rank(cone_basis ∪ n_basis).
  int ehull_sum_dim = 0;
  /// |E| + |Y| + |D| - |X| - Σ_{(x,x')∈D} |S_x|.
  int target = 0;
  bool is_e_family = false;

  friend bool operator==(const DimensionReport&, const DimensionReport&) = default;
};

/// All-ones vector, then N_{y0}(y,y') = [y'=y0] - [y=y0] for y0 = 1..n-1.
std::vector<IntVector> n_basis(const Digraph& g);

/// Per lumped block in lexicographic order: the anchor indicator when the
/// block lies in U, then the single-edge indicators of its R edges.
std::vector<IntVector> cone_basis(const Digraph& g, const LumpingMap& k);

int manifold_dim(const Digraph& g, const LumpingMap& k);
int span_dim(const Digraph& g, const LumpingMap& k);
int ehull_dim(const Digraph& g, const LumpingMap& k);

/// Complete test: e-family iff ehull_sum_dim == target.
DimensionReport dimensional_criterion(const Digraph& g, const LumpingMap& k);

/// Counts entering the sufficient non-e-family inequality
/// Σ_D |S_x| > (|D| - |U|) + (|Y| - |X|) + (|E| - |R|).
struct SimplifiedInequality {
  int lhs = 0;
  int rhs = 0;
  bool fires() const { return lhs > rhs; }
  friend bool operator==(const SimplifiedInequality&,
                         const SimplifiedInequality&) = default;
};

SimplifiedInequality simplified_inequality(const Digraph& g, const LumpingMap& k);

/// true when the inequality proves "not an e-family"; false is inconclusive.
bool simplified_necessary(const Digraph& g, const LumpingMap& k);

}  // namespace lumpex
