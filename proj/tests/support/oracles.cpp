#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <set>

#include <Eigen/Dense>
#include <boost/rational.hpp>

#ifndef LUMPEX_FIXTURE_DIR
#error "LUMPEX_FIXTURE_DIR must be defined"
#endif

namespace oracle {

std::vector<std::vector<bool>> reachability(const Digraph& g) {
  const int n = g.num_vertices();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) r[i][i] = true;
  for (const Edge& e : g.edges()) r[e.from][e.to] = true;
  for (int m = 0; m < n; ++m) {
    for (int i = 0; i < n; ++i) {
      if (!r[i][m]) continue;
      for (int j = 0; j < n; ++j) {
        if (r[m][j]) r[i][j] = true;
      }
    }
  }
  return r;
}

bool strongly_connected(const Digraph& g) {
  const auto r = reachability(g);
  for (const auto& row : r) {
    if (std::find(row.begin(), row.end(), false) != row.end()) return false;
  }
  return true;
}

bool nonvacuous(const Digraph& g, const LumpingMap& k) {
  using Q = boost::rational<long long>;
  const int n = g.num_vertices();
  const int m = k.num_classes();
  if (n == 0) return false;

  std::set<std::pair<int, int>> d;
  std::vector<std::vector<int>> cnt(n, std::vector<int>(m, 0));
  for (const Edge& e : g.edges()) {
    d.insert({k(e.from), k(e.to)});
    ++cnt[e.from][k(e.to)];
  }
  std::vector<int> outdeg(m, 0);
  for (const auto& [x, x2] : d) ++outdeg[x];

  std::vector<std::vector<Q>> p(n, std::vector<Q>(n, Q(0)));
  for (const Edge& e : g.edges()) {
    p[e.from][e.to] = Q(1, outdeg[k(e.from)] * cnt[e.from][k(e.to)]);
  }
  for (int y = 0; y < n; ++y) {
    Q row(0);
    for (int y2 = 0; y2 < n; ++y2) row += p[y][y2];
    if (row != Q(1)) return false;
  }
  for (int x = 0; x < m; ++x) {
    for (int x2 = 0; x2 < m; ++x2) {
      std::optional<Q> first;
      for (int y = 0; y < n; ++y) {
        if (k(y) != x) continue;
        Q s(0);
        for (int y2 = 0; y2 < n; ++y2) {
          if (k(y2) == x2) s += p[y][y2];
        }
        if (!first) {
          first = s;
        } else if (*first != s) {
          return false;
        }
      }
    }
  }
  return oracle::strongly_connected(g);
}

namespace {

Eigen::MatrixXd as_columns(const std::vector<IntVector>& vs) {
  const std::size_t len = vs.empty() ? 0 : vs.front().size();
  Eigen::MatrixXd a(len, vs.size());
  for (std::size_t j = 0; j < vs.size(); ++j) {
    for (std::size_t i = 0; i < len; ++i) a(i, j) = vs[j][i].get_d();
  }
  return a;
}

}  // namespace

int numeric_rank(const std::vector<IntVector>& vectors) {
  if (vectors.empty() || vectors.front().empty()) return 0;
  const Eigen::MatrixXd a = as_columns(vectors);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > 1e-9 * s(0)) ++r;
  }
  return r;
}

double projection_residual(const std::vector<IntVector>& basis,
                           const std::vector<double>& v) {
  const Eigen::MatrixXd a = as_columns(basis);
  const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(
      v.data(), static_cast<Eigen::Index>(v.size()));
  const Eigen::VectorXd x = a.completeOrthogonalDecomposition().solve(b);
  const double norm = b.norm();
  return norm == 0.0 ? 0.0 : (a * x - b).norm() / norm;
}

Digraph graph_from_mask(int n, std::uint64_t mask) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (mask >> (i * n + j) & 1U) edges.push_back({i, j});
    }
  }
  return Digraph(n, std::move(edges));
}

std::uint64_t mask_of(const Digraph& g) {
  std::uint64_t mask = 0;
  for (const Edge& e : g.edges()) {
    mask |= std::uint64_t{1} << (e.from * g.num_vertices() + e.to);
  }
  return mask;
}

std::vector<LumpingMap> all_lumpings(int n, int m) {
  std::vector<LumpingMap> out;
  std::vector<int> kappa(n, 0);
  while (true) {
    std::vector<bool> hit(m, false);
    for (int c : kappa) hit[c] = true;
    if (std::find(hit.begin(), hit.end(), false) == hit.end()) {
      out.emplace_back(kappa, m);
    }
    int i = n - 1;
    while (i >= 0 && kappa[i] == m - 1) kappa[i--] = 0;
    if (i < 0) break;
    ++kappa[i];
  }
  return out;
}

LumpingMap random_lumping(Rng& rng, int n, int m) {
  std::vector<int> states(n);
  std::iota(states.begin(), states.end(), 0);
  std::shuffle(states.begin(), states.end(), rng);
  std::vector<int> kappa(n);
  std::uniform_int_distribution<int> pick(0, m - 1);
  for (int i = 0; i < n; ++i) kappa[states[i]] = i < m ? i : pick(rng);
  return LumpingMap(std::move(kappa), m);
}

Family random_family(Rng& rng, int min_states, int max_states) {
  std::uniform_int_distribution<int> size_dist(min_states, max_states);
  std::bernoulli_distribution coin(0.5);
  std::bernoulli_distribution extra_block(0.35);
  while (true) {
    const int n = size_dist(rng);
    const int m = std::uniform_int_distribution<int>(1, n)(rng);
    LumpingMap k = random_lumping(rng, n, m);

    std::set<std::pair<int, int>> d;
    if (m == 1) {
      d.insert({0, 0});
    } else {
      std::vector<int> order(m);
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      for (int i = 0; i < m; ++i) d.insert({order[i], order[(i + 1) % m]});
      for (int x = 0; x < m; ++x) {
        for (int x2 = 0; x2 < m; ++x2) {
          if (extra_block(rng)) d.insert({x, x2});
        }
      }
    }

    std::vector<Edge> edges;
    for (const auto& [x, x2] : d) {
      const auto targets = k.members(x2);
      for (int y : k.members(x)) {
        std::vector<int> chosen;
        for (int t : targets) {
          if (coin(rng)) chosen.push_back(t);
        }
        if (chosen.empty()) {
          std::uniform_int_distribution<std::size_t> one(0, targets.size() - 1);
          chosen.push_back(targets[one(rng)]);
        }
        for (int t : chosen) edges.push_back({y, t});
      }
    }
    std::sort(edges.begin(), edges.end());
    Digraph g(n, std::move(edges));
    if (oracle::strongly_connected(g)) return {std::move(g), std::move(k)};
  }
}

EdgeFunction random_lumpable_positive(Rng& rng, const Digraph& g,
                                      const LumpingMap& k) {
  const int n = g.num_vertices();
  const int m = k.num_classes();
  std::uniform_real_distribution<double> scale(0.2, 5.0);
  std::uniform_real_distribution<double> share(0.1, 1.0);
  std::vector<double> block_sum(static_cast<std::size_t>(m) * m);
  for (double& c : block_sum) c = scale(rng);

  std::vector<double> dense(static_cast<std::size_t>(n) * n, 0.0);
  for (int y = 0; y < n; ++y) {
    for (int x2 = 0; x2 < m; ++x2) {
      std::vector<int> targets;
      for (int t : g.successors(y)) {
        if (k(t) == x2) targets.push_back(t);
      }
      if (targets.empty()) continue;
      std::vector<double> w(targets.size());
      double total = 0.0;
      for (double& wi : w) total += wi = share(rng);
      const double c = block_sum[static_cast<std::size_t>(k(y)) * m + x2];
      for (std::size_t i = 0; i < targets.size(); ++i) {
        dense[static_cast<std::size_t>(y) * n + targets[i]] = c * w[i] / total;
      }
    }
  }
  return EdgeFunction(g, std::move(dense));
}

double max_abs_diff(const EdgeFunction& a, const EdgeFunction& b) {
  double worst = 0.0;
  const auto da = a.dense();
  const auto db = b.dense();
  for (std::size_t i = 0; i < da.size(); ++i) {
    worst = std::max(worst, std::abs(da[i] - db[i]));
  }
  return worst;
}

std::string fixture_path(const std::string& name) {
  return std::string(LUMPEX_FIXTURE_DIR) + "/" + name;
}

}  // namespace oracle
