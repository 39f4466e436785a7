#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lumpex/digraph.hpp"
#include "lumpex/edge_function.hpp"

namespace lumpex {

/// Pair of lumped states (x, x'); the block S_x x S_x' of a matrix on Y.
struct Block {
  int from = 0;
  int to = 0;

  friend constexpr auto operator<=>(const Block&, const Block&) = default;
};

/// Surjective map κ: Y -> X given as one class index per state.
class LumpingMap {
 public:
  LumpingMap() = default;

  /// The class count is max(kappa)+1. Throws std::invalid_argument if some
  /// class in 0..max is never hit.
  explicit LumpingMap(std::vector<int> kappa);
  LumpingMap(std::vector<int> kappa, int num_classes);

  static LumpingMap identity(int num_states);
  static LumpingMap all_to_one(int num_states);
  /// Contiguous classes: the first sizes[0] states form class 0, and so on.
  static LumpingMap from_class_sizes(std::span<const int> sizes);

  int num_states() const { return static_cast<int>(kappa_.size()); }
  int num_classes() const { return static_cast<int>(members_.size()); }
  int operator()(int y) const { return kappa_[y]; }
  std::span<const int> labels() const { return kappa_; }

  /// S_x in ascending order.
  std::span<const int> members(int x) const { return members_[x]; }
  int class_size(int x) const { return static_cast<int>(members_[x].size()); }
  std::vector<int> class_sizes() const;

  friend bool operator==(const LumpingMap& a, const LumpingMap& b) {
    return a.kappa_ == b.kappa_ && a.members_.size() == b.members_.size();
  }

 private:
  std::vector<int> kappa_;
  std::vector<std::vector<int>> members_;
};

struct LumpedStructure {
  /// (X, D) with D = κ(E).
  Digraph lumped_graph;
  std::vector<int> class_sizes;
};

LumpedStructure lumped_graph(const Digraph& g, const LumpingMap& k);

/// Why W_κ(Y,E) is empty, or nullopt when it is not.
std::optional<std::string> vacuity_reason(const Digraph& g, const LumpingMap& k);

/// W_κ(Y,E) is non-empty: g is strongly connected and, for every lumped
/// edge (x,x'), every y in S_x has at least one edge into S_x'.
bool is_nonvacuous(const Digraph& g, const LumpingMap& k);

/// Throws VacuousFamilyError carrying vacuity_reason().
void require_nonvacuous(const Digraph& g, const LumpingMap& k);

/// Merging-row bookkeeping for every lumped block.
struct BlockProfile {
  /// D, lexicographic.
  std::vector<Block> blocks;
  /// M_{x,x'} per entry of `blocks`: rows of S_x with >= 2 edges into S_x'.
  std::vector<std::vector<int>> merging_rows;
  /// Anchor edges per entry of `blocks`: one edge per row of S_x.
  std::vector<std::vector<Edge>> anchors;
  /// U: blocks with at least one non-merging row.
  std::vector<Block> u_blocks;
  /// R: edges leaving a merging row into the merged class.
  std::vector<Edge> r_edges;
  /// row_counts[y][x'] = |{y} x S_x' ∩ E|.
  std::vector<std::vector<int>> row_counts;
  std::vector<int> class_sizes;

  std::optional<std::size_t> block_index(Block b) const;
  bool is_merging(std::size_t i) const { return !merging_rows[i].empty(); }
  bool is_multi_row_merging(std::size_t i) const {
    return is_merging(i) && class_sizes[blocks[i].from] >= 2;
  }
  std::vector<Block> merging_blocks() const;
  std::vector<Block> multi_row_merging_blocks() const;
};

/// Throws VacuousFamilyError on an empty family.
BlockProfile block_profile(const Digraph& g, const LumpingMap& k);

struct LumpabilityCheck {
  bool lumpable = true;
  /// max over blocks of (largest - smallest block row sum).
  double max_violation = 0.0;
};

/// Kemeny–Snell test. A block passes when its row-sum spread is at most
/// `tol` times its largest row sum.
LumpabilityCheck check_lumpability(const EdgeFunction& f, const LumpingMap& k,
                                   double tol = 1e-8);

inline bool is_lumpable_matrix(const EdgeFunction& f, const LumpingMap& k,
                               double tol = 1e-8) {
  return check_lumpability(f, k, tol).lumpable;
}

/// κ⋆F(x,x') = F(y, S_x') read from the first row y of S_x. Throws
/// std::invalid_argument when `f` is not lumpable at `tol`.
EdgeFunction push_forward(const EdgeFunction& f, const LumpingMap& k,
                          double tol = 1e-8);
StochasticMatrix push_forward(const StochasticMatrix& p, const LumpingMap& k,
                              double tol = 1e-8);

struct HudsonExpansion {
  Digraph graph;
  LumpingMap lumping;
  /// Base edge (x1, x2) represented by each expanded state.
  std::vector<Edge> states;
};

/// Sliding-window lift: states are base edges, (x1,x2) -> (x2,x3), lumped
/// to the second coordinate. Throws if `base` is not strongly connected.
HudsonExpansion hudson_expansion(const Digraph& base);

/// All n² ordered pairs on the states of `k`.
Digraph complete_family(int num_states, const LumpingMap& k);

}  // namespace lumpex
