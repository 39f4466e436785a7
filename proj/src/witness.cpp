#include "lumpex/witness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>
#include <vector>

#include "lumpex/spectral.hpp"

namespace lumpex {

namespace {

struct MergingSetup {
  int y_star = 0;
  int y_a = 0;
  int y_b = 0;
  double constant = 0.0;
};

MergingSetup merging_setup(const Digraph& g, const LumpingMap& k, Block block) {
  const BlockProfile p = block_profile(g, k);
  const auto i = p.block_index(block);
  if (!i || !p.is_multi_row_merging(*i)) {
    throw std::invalid_argument("block (" + std::to_string(block.from) + "," +
                                std::to_string(block.to) +
                                ") is not a multi-row merging block");
  }
  MergingSetup s;
  s.y_star = p.merging_rows[*i].front();
  std::vector<int> targets;
  for (int y2 : g.successors(s.y_star)) {
    if (k(y2) == block.to) targets.push_back(y2);
  }
  s.y_a = targets[0];
  s.y_b = targets[1];
  int outdeg = 0;
  for (const Block& b : p.blocks) outdeg += b.from == block.from ? 1 : 0;
  s.constant = 2.0 / (outdeg * static_cast<double>(targets.size()));
  return s;
}

// Uniform lumped rows and uniform fan-outs.
std::vector<double> uniform_type(const Digraph& g, const LumpingMap& k) {
  const int n = g.num_vertices();
  const BlockProfile p = block_profile(g, k);
  std::vector<int> outdeg(k.num_classes(), 0);
  for (const Block& b : p.blocks) ++outdeg[b.from];
  std::vector<double> dense(static_cast<std::size_t>(n) * n, 0.0);
  for (const Edge& e : g.edges()) {
    dense[static_cast<std::size_t>(e.from) * n + e.to] =
        1.0 / (outdeg[k(e.from)] * static_cast<double>(p.row_counts[e.from][k(e.to)]));
  }
  return dense;
}

StochasticMatrix with_pair(const Digraph& g, std::vector<double> dense,
                           const MergingSetup& s, double first, double second) {
  const int n = g.num_vertices();
  dense[static_cast<std::size_t>(s.y_star) * n + s.y_a] = first;
  dense[static_cast<std::size_t>(s.y_star) * n + s.y_b] = second;
  return StochasticMatrix::from(EdgeFunction(g, std::move(dense)));
}

std::vector<double> flat_dirichlet(std::size_t size, std::mt19937_64& rng) {
  std::gamma_distribution<double> gamma(1.0, 1.0);
  std::vector<double> out(size);
  double total = 0.0;
  for (double& v : out) {
    // Keep draws away from zero so logs stay tame.
    v = std::max(gamma(rng), 1e-12);
    total += v;
  }
  for (double& v : out) v /= total;
  return out;
}

std::optional<Witness> try_pair(const StochasticMatrix& p0, const StochasticMatrix& p1,
                                double t, const LumpingMap& k, double tol) {
  try {
    const StochasticMatrix pt = e_geodesic_point(p0, p1, t);
    const double v = lumpability_violation(pt.function(), k);
    if (v > tol) return Witness{p0, p1, t, v};
  } catch (const std::exception&) {
    // Numerically extreme geodesic point; treat as no witness.
  }
  return std::nullopt;
}

}  // namespace

double merging_pair_constant(const Digraph& g, const LumpingMap& k, Block block) {
  return merging_setup(g, k, block).constant;
}

MergingPair merging_pair_construction(const Digraph& g, const LumpingMap& k,
                                      Block block, double eta_a, double eta_b) {
  const MergingSetup s = merging_setup(g, k, block);
  if (!(0.0 < eta_a && eta_a < eta_b && eta_b < 1.0)) {
    throw std::invalid_argument("need 0 < eta_a < eta_b < 1");
  }
  if (std::abs(eta_a + eta_b - s.constant) > 1e-12) {
    throw std::invalid_argument("eta_a + eta_b must equal " +
                                std::to_string(s.constant));
  }
  const std::vector<double> base = uniform_type(g, k);
  return {with_pair(g, base, s, eta_a, eta_b), with_pair(g, base, s, eta_b, eta_a)};
}

MergingPair merging_pair_construction(const Digraph& g, const LumpingMap& k,
                                      Block block) {
  const double c = merging_pair_constant(g, k, block);
  return merging_pair_construction(g, k, block, c / 3.0, c - c / 3.0);
}

double lumpability_violation(const EdgeFunction& f, const LumpingMap& k) {
  return check_lumpability(f, k).max_violation;
}

StochasticMatrix random_lumpable_matrix(const Digraph& g, const LumpingMap& k,
                                        std::mt19937_64& rng) {
  const BlockProfile p = block_profile(g, k);
  const int n = g.num_vertices();
  const int m = k.num_classes();
  std::vector<double> lumped(static_cast<std::size_t>(m) * m, 0.0);
  for (int x = 0; x < m; ++x) {
    std::vector<int> succ;
    for (const Block& b : p.blocks) {
      if (b.from == x) succ.push_back(b.to);
    }
    const std::vector<double> q = flat_dirichlet(succ.size(), rng);
    for (std::size_t i = 0; i < succ.size(); ++i) {
      lumped[static_cast<std::size_t>(x) * m + succ[i]] = q[i];
    }
  }
  std::vector<double> dense(static_cast<std::size_t>(n) * n, 0.0);
  for (int y = 0; y < n; ++y) {
    for (int x2 = 0; x2 < m; ++x2) {
      std::vector<int> targets;
      for (int y2 : g.successors(y)) {
        if (k(y2) == x2) targets.push_back(y2);
      }
      if (targets.empty()) continue;
      const std::vector<double> w = flat_dirichlet(targets.size(), rng);
      const double mass = lumped[static_cast<std::size_t>(k(y)) * m + x2];
      for (std::size_t i = 0; i < targets.size(); ++i) {
        dense[static_cast<std::size_t>(y) * n + targets[i]] = mass * w[i];
      }
    }
  }
  return StochasticMatrix::from(EdgeFunction(g, std::move(dense)));
}

std::optional<Witness> search_witness(const Digraph& g, const LumpingMap& k,
                                      const WitnessSearchOptions& options) {
  const BlockProfile p = block_profile(g, k);
  for (const Block& b : p.multi_row_merging_blocks()) {
    const MergingPair pair = merging_pair_construction(g, k, b);
    if (auto w = try_pair(pair.p0, pair.p1, 0.5, k, options.tol)) return w;
  }
  static constexpr double kGrid[] = {2.0, -2.0, 1.0, -1.0, 0.25, 0.5, 0.75};
  std::mt19937_64 rng(options.seed);
  for (int attempt = 0; attempt < options.budget; ++attempt) {
    const StochasticMatrix p0 = random_lumpable_matrix(g, k, rng);
    const StochasticMatrix p1 = random_lumpable_matrix(g, k, rng);
    for (double t : kGrid) {
      if (auto w = try_pair(p0, p1, t, k, options.tol)) return w;
    }
  }
  return std::nullopt;
}

bool verify_witness(const Digraph& g, const LumpingMap& k, const Witness& w,
                    double tol) {
  try {
    for (const StochasticMatrix* p : {&w.p0, &w.p1}) {
      if (!(p->graph() == g)) return false;
      StochasticMatrix::from(p->function(), 1e-10);
      if (!is_lumpable_matrix(p->function(), k, 1e-10)) return false;
    }
    const StochasticMatrix pt = e_geodesic_point(w.p0, w.p1, w.t);
    return lumpability_violation(pt.function(), k) > tol;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace lumpex
