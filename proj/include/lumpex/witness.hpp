#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "lumpex/digraph.hpp"
#include "lumpex/edge_function.hpp"
#include "lumpex/lumping.hpp"

namespace lumpex {

inline constexpr std::uint64_t kDefaultWitnessSeed = 20240611;

/// (P0, P1, t) whose e-geodesic point at t is not lumpable.
struct Witness {
  StochasticMatrix p0;
  StochasticMatrix p1;
  double t = 0.0;
  /// Largest block row-sum spread of the geodesic point.
  double violation = 0.0;
};

struct MergingPair {
  StochasticMatrix p0;
  StochasticMatrix p1;
};

/// Normalization constant 2 / (outdeg_D(x0) * s(y*, x0')) for the first
/// merging row y* of the block.
double merging_pair_constant(const Digraph& g, const LumpingMap& k, Block block);

/// P_{a,b} and P_{b,a}: uniform lumped rows and uniform within-block fan-outs,
/// except η_a, η_b placed on the first two edges of the first merging row y*.
/// Throws std::invalid_argument unless the block is multi-row merging and
/// 0 < η_a < η_b < 1 with η_a + η_b equal to merging_pair_constant.
MergingPair merging_pair_construction(const Digraph& g, const LumpingMap& k,
                                      Block block, double eta_a, double eta_b);

/// Default split (c/3, 2c/3).
MergingPair merging_pair_construction(const Digraph& g, const LumpingMap& k,
                                      Block block);

/// Max over blocks of (largest - smallest block row sum).
double lumpability_violation(const EdgeFunction& f, const LumpingMap& k);

/// Lumped rows drawn from a flat Dirichlet over D-successors, each block row
/// split by a flat Dirichlet over that row's edges. Exactly lumpable up to
/// rounding. Family must be non-vacuous.
StochasticMatrix random_lumpable_matrix(const Digraph& g, const LumpingMap& k,
                                        std::mt19937_64& rng);

struct WitnessSearchOptions {
  int budget = 500;
  double tol = 1e-6;
  std::uint64_t seed = kDefaultWitnessSeed;
};

/// Constructive pairs at t = 1/2 for each multi-row merging block, then
/// `budget` random lumpable pairs scanned over t ∈ {2,-2,1,-1,0.25,0.5,0.75}.
/// Throws VacuousFamilyError on an empty family.
std::optional<Witness> search_witness(const Digraph& g, const LumpingMap& k,
                                      const WitnessSearchOptions& options = {});

/// P0 and P1 lie in the family at 1e-10 and the geodesic point at t has
/// violation above `tol`.
bool verify_witness(const Digraph& g, const LumpingMap& k, const Witness& w,
                    double tol = 1e-6);

}  // namespace lumpex
