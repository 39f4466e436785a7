#pragma once

// Independent reference implementations and random generators for tests.
// Nothing here calls into the library's own graph or rank code.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lumpex/digraph.hpp"
#include "lumpex/edge_function.hpp"
#include "lumpex/exact.hpp"
#include "lumpex/lumping.hpp"

namespace oracle {

using lumpex::Digraph;
using lumpex::Edge;
using lumpex::EdgeFunction;
using lumpex::IntVector;
using lumpex::LumpingMap;
using Rng = std::mt19937_64;

/// Reflexive transitive closure by Floyd–Warshall.
std::vector<std::vector<bool>> reachability(const Digraph& g);
bool strongly_connected(const Digraph& g);

/// Builds the uniform-type matrix in exact rationals
/// P(y,y') = 1 / (outdeg_D(κy) · |{y'' ∈ S_κy' : (y,y'') ∈ E}|)
/// and accepts when it is stochastic, exactly lumpable and irreducible.
bool nonvacuous(const Digraph& g, const LumpingMap& k);

/// Rank from singular values above a relative threshold.
int numeric_rank(const std::vector<IntVector>& vectors);

/// ‖v − Π v‖₂ / ‖v‖₂ with Π the least-squares projection onto span(basis).
double projection_residual(const std::vector<IntVector>& basis,
                           const std::vector<double>& v);

/// Bit i·n + j set iff (i, j) is an edge.
Digraph graph_from_mask(int n, std::uint64_t mask);
std::uint64_t mask_of(const Digraph& g);

/// Every surjective map {0..n-1} -> {0..m-1}.
std::vector<LumpingMap> all_lumpings(int n, int m);

struct Family {
  Digraph graph;
  LumpingMap lumping;
};

/// Random κ with `m` classes on `n` states; each class non-empty.
LumpingMap random_lumping(Rng& rng, int n, int m);

/// Random non-vacuous family on n states (2 ≤ n ≤ max_states): random κ, a
/// strongly connected lumped graph, every block row given a random non-empty
/// set of targets. Retries until strongly connected.
Family random_family(Rng& rng, int min_states, int max_states);

/// Positive function with F(y, S_x') depending only on (κy, x').
EdgeFunction random_lumpable_positive(Rng& rng, const Digraph& g,
                                      const LumpingMap& k);

/// Largest entry-wise gap between two functions on the same state count.
double max_abs_diff(const EdgeFunction& a, const EdgeFunction& b);

std::string fixture_path(const std::string& name);

}  // namespace oracle
