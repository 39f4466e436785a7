#include "lumpex/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "lumpex/errors.hpp"

namespace lumpex {

namespace {

using Dense = std::vector<double>;

Dense multiply(const Dense& a, const Dense& b, int n) {
  Dense c(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double aik = a[static_cast<std::size_t>(i) * n + k];
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        c[static_cast<std::size_t>(i) * n + j] +=
            aik * b[static_cast<std::size_t>(k) * n + j];
      }
    }
  }
  return c;
}

double normalize_sum(std::vector<double>& x) {
  const double s = std::accumulate(x.begin(), x.end(), 0.0);
  for (double& v : x) v /= s;
  return s;
}

// Starting vector from a high power of the shifted matrix. Squaring 40 times
// stands in for 2^40 plain iterations, which keeps badly conditioned inputs
// (second eigenvalue of A close to the first) inside the iteration budget.
std::vector<double> warm_start(const Dense& shifted, int n) {
  Dense b = shifted;
  for (int round = 0; round < 40; ++round) {
    b = multiply(b, b, n);
    const double mx = *std::max_element(b.begin(), b.end());
    for (double& v : b) v /= mx;
  }
  std::vector<double> x(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) x[i] += b[static_cast<std::size_t>(i) * n + j];
  }
  for (double& v : x) v = std::max(v, 1e-300);
  normalize_sum(x);
  return x;
}

void require_same_support(const EdgeFunction& a, const EdgeFunction& b) {
  if (!(a.graph() == b.graph())) {
    throw std::invalid_argument("edge functions have different supports");
  }
}

}  // namespace

PFEigenpair pf_eigenpair(const EdgeFunction& f) {
  const int n = f.size();
  if (n == 0 || f.graph().num_edges() == 0) {
    throw std::invalid_argument("pf_eigenpair: empty support");
  }
  if (!f.is_positive()) {
    throw std::invalid_argument("pf_eigenpair: function is not positive on its support");
  }
  if (!strongly_connected(f.graph())) {
    throw std::invalid_argument("pf_eigenpair: reducible support");
  }
  double c = 0.0;
  for (int y = 0; y < n; ++y) c = std::max(c, f.row_sum(y));

  Dense a(f.dense().begin(), f.dense().end());
  for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i) * n + i] += c;
  Dense scaled = a;
  for (double& v : scaled) v /= 2.0 * c;

  std::vector<double> x = warm_start(scaled, n);
  std::vector<double> next(n);
  const long long cap = 100LL * n * n;
  bool converged = false;
  for (long long it = 0; it < cap; ++it) {
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += a[static_cast<std::size_t>(i) * n + j] * x[j];
      next[i] = s;
    }
    normalize_sum(next);
    double diff = 0.0;
    for (int i = 0; i < n; ++i) diff = std::max(diff, std::abs(next[i] - x[i]));
    x.swap(next);
    if (diff < 1e-14) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw ConvergenceError("power iteration did not converge within " +
                           std::to_string(cap) + " steps");
  }

  PFEigenpair out;
  out.v = x;
  double rho = 0.0;
  for (const Edge& e : f.graph().edges()) rho += f(e) * x[e.to];
  out.rho = rho;
  return out;
}

StochasticMatrix s_normalize(const EdgeFunction& f) {
  const PFEigenpair pf = pf_eigenpair(f);
  const int n = f.size();
  std::vector<double> dense(static_cast<std::size_t>(n) * n, 0.0);
  for (int y = 0; y < n; ++y) {
    double row = 0.0;
    for (int y2 : f.graph().successors(y)) {
      const double p = f(y, y2) * pf.v[y2] / (pf.rho * pf.v[y]);
      dense[static_cast<std::size_t>(y) * n + y2] = p;
      row += p;
    }
    // Absorb the eigen-residual so every row sums to one to rounding.
    for (int y2 : f.graph().successors(y)) {
      dense[static_cast<std::size_t>(y) * n + y2] /= row;
    }
  }
  return StochasticMatrix::from(EdgeFunction(f.graph(), std::move(dense)));
}

StochasticMatrix e_geodesic_point(const StochasticMatrix& p0,
                                  const StochasticMatrix& p1, double t) {
  const EdgeFunction fs[] = {p0.function(), p1.function()};
  const double w[] = {1.0 - t, t};
  return s_normalize(log_combination(fs, w));
}

EdgeFunction log_combination(std::span<const EdgeFunction> fs,
                             std::span<const double> weights) {
  if (fs.empty() || fs.size() != weights.size()) {
    throw std::invalid_argument("log_combination: need one weight per function");
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("log_combination: weights sum to " +
                                std::to_string(total) + ", not 1");
  }
  for (const EdgeFunction& f : fs) {
    require_same_support(fs.front(), f);
    if (!f.is_positive()) {
      throw std::invalid_argument("log_combination: non-positive function");
    }
  }
  EdgeFunction out(fs.front().graph());
  for (const Edge& e : out.graph().edges()) {
    double acc = 0.0;
    for (std::size_t i = 0; i < fs.size(); ++i) acc += weights[i] * std::log(fs[i](e));
    out.set(e, std::exp(acc));
  }
  return out;
}

}  // namespace lumpex
