#pragma once

#include <span>
#include <vector>

#include "lumpex/edge_function.hpp"

namespace lumpex {

/// Right Perron–Frobenius pair; v is positive and sums to 1.
struct PFEigenpair {
  double rho = 0.0;
  std::vector<double> v;
};

/// Power iteration on F + cI with c the largest row sum.
/// Throws std::invalid_argument when F is not positive on a strongly connected
/// support, ConvergenceError when the iteration budget (100 n²) runs out.
PFEigenpair pf_eigenpair(const EdgeFunction& f);

/// P(y,y') = F(y,y') v(y') / (ρ v(y)).
StochasticMatrix s_normalize(const EdgeFunction& f);

/// s(P0^(1-t) ⊙ P1^t). Supports must coincide.
StochasticMatrix e_geodesic_point(const StochasticMatrix& p0,
                                  const StochasticMatrix& p1, double t);

/// exp(Σ w_i log F_i) on the shared support. Weights must sum to 1 within
/// 1e-12.
EdgeFunction log_combination(std::span<const EdgeFunction> fs,
                             std::span<const double> weights);

}  // namespace lumpex
