#include "lumpex/lumping.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "lumpex/errors.hpp"

namespace lumpex {

LumpingMap::LumpingMap(std::vector<int> kappa)
    : LumpingMap(kappa,
                 kappa.empty() ? 0
                               : *std::max_element(kappa.begin(), kappa.end()) + 1) {}

LumpingMap::LumpingMap(std::vector<int> kappa, int num_classes)
    : kappa_(std::move(kappa)) {
  if (num_classes < 0) throw std::invalid_argument("negative class count");
  members_.assign(num_classes, {});
  for (std::size_t y = 0; y < kappa_.size(); ++y) {
    const int x = kappa_[y];
    if (x < 0 || x >= num_classes) {
      throw std::invalid_argument("lumping: state " + std::to_string(y) +
                                  " maps to class " + std::to_string(x) +
                                  " outside 0.." +
                                  std::to_string(num_classes - 1));
    }
    members_[x].push_back(static_cast<int>(y));
  }
  for (int x = 0; x < num_classes; ++x) {
    if (members_[x].empty()) {
      throw std::invalid_argument("lumping is not surjective: class " +
                                  std::to_string(x) + " is empty");
    }
  }
}

LumpingMap LumpingMap::identity(int num_states) {
  std::vector<int> kappa(num_states);
  for (int y = 0; y < num_states; ++y) kappa[y] = y;
  return LumpingMap(std::move(kappa), num_states);
}

LumpingMap LumpingMap::all_to_one(int num_states) {
  return LumpingMap(std::vector<int>(num_states, 0), num_states > 0 ? 1 : 0);
}

LumpingMap LumpingMap::from_class_sizes(std::span<const int> sizes) {
  std::vector<int> kappa;
  for (std::size_t x = 0; x < sizes.size(); ++x) {
    if (sizes[x] <= 0) throw std::invalid_argument("class sizes must be positive");
    kappa.insert(kappa.end(), sizes[x], static_cast<int>(x));
  }
  return LumpingMap(std::move(kappa), static_cast<int>(sizes.size()));
}

std::vector<int> LumpingMap::class_sizes() const {
  std::vector<int> out;
  out.reserve(members_.size());
  for (const auto& m : members_) out.push_back(static_cast<int>(m.size()));
  return out;
}

namespace {

void check_sizes(const Digraph& g, const LumpingMap& k) {
  if (g.num_vertices() != k.num_states()) {
    throw std::invalid_argument("lumping covers " + std::to_string(k.num_states()) +
                                " states but the graph has " +
                                std::to_string(g.num_vertices()));
  }
}

// counts[y][x'] = number of edges from y into S_x'.
std::vector<std::vector<int>> row_counts(const Digraph& g, const LumpingMap& k) {
  std::vector<std::vector<int>> counts(g.num_vertices(),
                                       std::vector<int>(k.num_classes(), 0));
  for (const Edge& e : g.edges()) ++counts[e.from][k(e.to)];
  return counts;
}

}  // namespace

LumpedStructure lumped_graph(const Digraph& g, const LumpingMap& k) {
  check_sizes(g, k);
  std::vector<Edge> d;
  d.reserve(g.num_edges());
  for (const Edge& e : g.edges()) d.push_back({k(e.from), k(e.to)});
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  return {Digraph(k.num_classes(), std::move(d)), k.class_sizes()};
}

std::optional<std::string> vacuity_reason(const Digraph& g, const LumpingMap& k) {
  check_sizes(g, k);
  if (g.num_vertices() == 0) return "empty state space";
  if (!strongly_connected(g)) return "connection graph is not strongly connected";
  for (int y = 0; y < g.num_vertices(); ++y) {
    if (g.successors(y).empty()) return "state " + std::to_string(y) + " has no outgoing edge";
  }
  const auto counts = row_counts(g, k);
  const Digraph d = lumped_graph(g, k).lumped_graph;
  for (const Edge& b : d.edges()) {
    for (int y : k.members(b.from)) {
      if (counts[y][b.to] == 0) {
        return "state " + std::to_string(y) + " has no edge into class " +
               std::to_string(b.to) + " although its class does";
      }
    }
  }
  return std::nullopt;
}

bool is_nonvacuous(const Digraph& g, const LumpingMap& k) {
  return !vacuity_reason(g, k).has_value();
}

void require_nonvacuous(const Digraph& g, const LumpingMap& k) {
  if (auto reason = vacuity_reason(g, k)) {
    throw VacuousFamilyError("vacuous lumpable family: " + *reason);
  }
}

std::optional<std::size_t> BlockProfile::block_index(Block b) const {
  auto it = std::lower_bound(blocks.begin(), blocks.end(), b);
  if (it == blocks.end() || *it != b) return std::nullopt;
  return static_cast<std::size_t>(it - blocks.begin());
}

std::vector<Block> BlockProfile::merging_blocks() const {
  std::vector<Block> out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (is_merging(i)) out.push_back(blocks[i]);
  }
  return out;
}

std::vector<Block> BlockProfile::multi_row_merging_blocks() const {
  std::vector<Block> out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (is_multi_row_merging(i)) out.push_back(blocks[i]);
  }
  return out;
}

BlockProfile block_profile(const Digraph& g, const LumpingMap& k) {
  require_nonvacuous(g, k);
  BlockProfile p;
  p.row_counts = row_counts(g, k);
  p.class_sizes = k.class_sizes();
  const Digraph d = lumped_graph(g, k).lumped_graph;
  for (const Edge& b : d.edges()) {
    p.blocks.push_back({b.from, b.to});
  }
  for (const Block& b : p.blocks) {
    std::vector<int> merging;
    std::vector<Edge> anchors;
    for (int y : k.members(b.from)) {
      if (p.row_counts[y][b.to] >= 2) merging.push_back(y);
      for (int y2 : k.members(b.to)) {
        if (g.has_edge(y, y2)) {
          anchors.push_back({y, y2});
          break;
        }
      }
    }
    if (merging.size() != static_cast<std::size_t>(k.class_size(b.from))) {
      p.u_blocks.push_back(b);
    }
    for (int y : merging) {
      for (int y2 : g.successors(y)) {
        if (k(y2) == b.to) p.r_edges.push_back({y, y2});
      }
    }
    p.merging_rows.push_back(std::move(merging));
    p.anchors.push_back(std::move(anchors));
  }
  std::sort(p.r_edges.begin(), p.r_edges.end());
  return p;
}

LumpabilityCheck check_lumpability(const EdgeFunction& f, const LumpingMap& k,
                                   double tol) {
  check_sizes(f.graph(), k);
  const int n = f.size();
  const int m = k.num_classes();
  std::vector<double> sums(static_cast<std::size_t>(n) * m, 0.0);
  for (const Edge& e : f.graph().edges()) {
    sums[static_cast<std::size_t>(e.from) * m + k(e.to)] += f(e);
  }
  LumpabilityCheck out;
  for (int x = 0; x < m; ++x) {
    for (int x2 = 0; x2 < m; ++x2) {
      double lo = 0.0;
      double hi = 0.0;
      bool first = true;
      for (int y : k.members(x)) {
        const double s = sums[static_cast<std::size_t>(y) * m + x2];
        if (first) {
          lo = hi = s;
          first = false;
        } else {
          lo = std::min(lo, s);
          hi = std::max(hi, s);
        }
      }
      const double spread = hi - lo;
      out.max_violation = std::max(out.max_violation, spread);
      const double scale = std::max(std::abs(hi), std::abs(lo));
      if (spread > tol * scale) out.lumpable = false;
    }
  }
  return out;
}

EdgeFunction push_forward(const EdgeFunction& f, const LumpingMap& k, double tol) {
  const auto check = check_lumpability(f, k, tol);
  if (!check.lumpable) {
    throw std::invalid_argument("push_forward: function is not lumpable (violation " +
                                std::to_string(check.max_violation) + ")");
  }
  const int m = k.num_classes();
  std::vector<double> dense(static_cast<std::size_t>(m) * m, 0.0);
  for (int x = 0; x < m; ++x) {
    const int y = k.members(x).front();
    for (int y2 : f.graph().successors(y)) {
      dense[static_cast<std::size_t>(x) * m + k(y2)] += f(y, y2);
    }
  }
  return EdgeFunction(lumped_graph(f.graph(), k).lumped_graph, std::move(dense));
}

StochasticMatrix push_forward(const StochasticMatrix& p, const LumpingMap& k,
                              double tol) {
  return StochasticMatrix::from(push_forward(p.function(), k, tol), 1e-10);
}

HudsonExpansion hudson_expansion(const Digraph& base) {
  if (base.num_edges() == 0 || !strongly_connected(base)) {
    throw std::invalid_argument("hudson_expansion: base graph must be strongly "
                                "connected with at least one edge");
  }
  HudsonExpansion h;
  h.states.assign(base.edges().begin(), base.edges().end());
  const int n = static_cast<int>(h.states.size());
  std::vector<Edge> edges;
  std::vector<int> kappa(n);
  for (int i = 0; i < n; ++i) {
    kappa[i] = h.states[i].to;
    for (int j = 0; j < n; ++j) {
      if (h.states[i].to == h.states[j].from) edges.push_back({i, j});
    }
  }
  h.graph = Digraph(n, std::move(edges));
  h.lumping = LumpingMap(std::move(kappa), base.num_vertices());
  return h;
}

Digraph complete_family(int num_states, const LumpingMap& k) {
  if (k.num_states() != num_states) {
    throw std::invalid_argument("complete_family: lumping size mismatch");
  }
  std::vector<Edge> edges;
  for (int i = 0; i < num_states; ++i) {
    for (int j = 0; j < num_states; ++j) edges.push_back({i, j});
  }
  return Digraph(num_states, std::move(edges));
}

}  // namespace lumpex
