#include "lumpex/criteria.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <utility>

#include "lumpex/errors.hpp"

namespace lumpex {

namespace {

constexpr std::array<std::string_view, 2> kDecisionNames = {"EFamily", "NotEFamily"};
constexpr std::array<std::string_view, 6> kRuleNames = {
    "Degenerate",           "NoMultiRowMerging",      "LazyCycle",
    "RedundantMergingBlock", "SimplifiedInequality", "DimensionalCriterion"};

bool subset_of(const Digraph& small, const Digraph& big) {
  return std::includes(big.edges().begin(), big.edges().end(),
                       small.edges().begin(), small.edges().end());
}

void require_nested(const Digraph& small, const Digraph& big, const LumpingMap& k) {
  if (small.num_vertices() != big.num_vertices() ||
      small.num_vertices() != k.num_states()) {
    throw std::invalid_argument("nested families must share the state space");
  }
  if (!subset_of(small, big)) {
    throw std::invalid_argument("smaller edge set is not contained in the larger one");
  }
  require_nonvacuous(small, k);
  require_nonvacuous(big, k);
}

// Block (x0,x0') removed from the subgraph on classes `t` stays strongly
// connected.
bool survives_removal(const Digraph& g, const LumpingMap& k, Block b,
                      std::span<const int> t) {
  std::vector<int> keep;
  for (int x : t) {
    for (int y : k.members(x)) keep.push_back(y);
  }
  const InducedSubgraph sub = induced_subgraph(g, keep);
  std::vector<Edge> drop;
  for (const Edge& e : sub.graph.edges()) {
    if (k(sub.original_vertex[e.from]) == b.from &&
        k(sub.original_vertex[e.to]) == b.to) {
      drop.push_back(e);
    }
  }
  return strongly_connected(remove_edges(sub.graph, drop));
}

}  // namespace

std::string_view to_string(Decision d) { return kDecisionNames[static_cast<int>(d)]; }
std::string_view to_string(Rule r) { return kRuleNames[static_cast<int>(r)]; }

std::optional<Decision> parse_decision(std::string_view s) {
  for (std::size_t i = 0; i < kDecisionNames.size(); ++i) {
    if (kDecisionNames[i] == s) return static_cast<Decision>(i);
  }
  return std::nullopt;
}

std::optional<Rule> parse_rule(std::string_view s) {
  for (std::size_t i = 0; i < kRuleNames.size(); ++i) {
    if (kRuleNames[i] == s) return static_cast<Rule>(i);
  }
  return std::nullopt;
}

bool is_degenerate(const LumpingMap& k) {
  return k.num_classes() == 1 || k.num_classes() == k.num_states();
}

std::optional<Verdict> no_multi_row_criterion(const BlockProfile& profile) {
  if (!profile.multi_row_merging_blocks().empty()) return std::nullopt;
  return Verdict{Decision::EFamily, Rule::NoMultiRowMerging,
                 NoMultiRowCertificate{profile.merging_blocks()}};
}

std::optional<Verdict> lazy_cycle_criterion(const Digraph& g, const LumpingMap& k) {
  const int m = k.num_classes();
  if (m < 2) return std::nullopt;
  for (const Edge& e : g.edges()) {
    if (k(e.from) == k(e.to) && e.from != e.to) return std::nullopt;
  }
  std::vector<int> next(m, -1);
  std::vector<int> indegree(m, 0);
  const Digraph d = lumped_graph(g, k).lumped_graph;
  for (const Edge& b : d.edges()) {
    if (b.from == b.to) continue;
    if (next[b.from] != -1) return std::nullopt;
    next[b.from] = b.to;
    ++indegree[b.to];
  }
  for (int x = 0; x < m; ++x) {
    if (next[x] == -1 || indegree[x] != 1) return std::nullopt;
  }
  LazyCycleCertificate cert;
  int x = 0;
  do {
    cert.cycle.push_back(x);
    x = next[x];
  } while (x != 0 && static_cast<int>(cert.cycle.size()) <= m);
  if (static_cast<int>(cert.cycle.size()) != m) return std::nullopt;
  return Verdict{Decision::EFamily, Rule::LazyCycle, std::move(cert)};
}

RedundancyResult is_redundant_block(const Digraph& g, const LumpingMap& k,
                                    Block block, std::uint64_t budget) {
  const Digraph d = lumped_graph(g, k).lumped_graph;
  if (!d.has_edge(block.from, block.to)) {
    throw std::invalid_argument("block (" + std::to_string(block.from) + "," +
                                std::to_string(block.to) + ") is not a lumped edge");
  }
  const int m = k.num_classes();
  RedundancyResult out;

  auto attempt = [&](std::vector<int> t) -> std::optional<RedundancyResult::Status> {
    if (out.examined >= budget) return RedundancyResult::Status::Unknown;
    ++out.examined;
    if (survives_removal(g, k, block, t)) {
      out.classes = std::move(t);
      return RedundancyResult::Status::Redundant;
    }
    return std::nullopt;
  };

  std::vector<int> all(m);
  for (int x = 0; x < m; ++x) all[x] = x;
  if (auto s = attempt(all)) {
    out.status = *s;
    return out;
  }

  std::vector<int> others;
  for (int x = 0; x < m; ++x) {
    if (x != block.from && x != block.to) others.push_back(x);
  }
  const int r = static_cast<int>(others.size());
  // Extra classes beyond the block's own, by increasing count; the full set
  // was tried above.
  for (int extra = 0; extra < r; ++extra) {
    std::vector<int> idx(extra);
    for (int i = 0; i < extra; ++i) idx[i] = i;
    while (true) {
      std::vector<int> t = {block.from, block.to};
      for (int i : idx) t.push_back(others[i]);
      std::sort(t.begin(), t.end());
      t.erase(std::unique(t.begin(), t.end()), t.end());
      if (auto s = attempt(std::move(t))) {
        out.status = *s;
        return out;
      }
      int i = extra - 1;
      while (i >= 0 && idx[i] == r - extra + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < extra; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  out.status = RedundancyResult::Status::NotRedundant;
  return out;
}

std::optional<Verdict> redundant_merging_criterion(const Digraph& g,
                                                   const LumpingMap& k,
                                                   std::uint64_t budget) {
  const BlockProfile p = block_profile(g, k);
  for (const Block& b : p.multi_row_merging_blocks()) {
    RedundancyResult r = is_redundant_block(g, k, b, budget);
    if (r.status == RedundancyResult::Status::Redundant) {
      return Verdict{Decision::NotEFamily, Rule::RedundantMergingBlock,
                     RedundancyCertificate{b, std::move(r.classes)}};
    }
  }
  return std::nullopt;
}

std::optional<Verdict> simplified_criterion(const Digraph& g, const LumpingMap& k) {
  const SimplifiedInequality s = simplified_inequality(g, k);
  if (!s.fires()) return std::nullopt;
  return Verdict{Decision::NotEFamily, Rule::SimplifiedInequality, s};
}

Verdict decide(const Digraph& g, const LumpingMap& k, const DecideConfig& config) {
  require_nonvacuous(g, k);
  if (is_degenerate(k)) {
    return {Decision::EFamily, Rule::Degenerate,
            DegenerateCertificate{k.num_states(), k.num_classes()}};
  }
  const BlockProfile p = block_profile(g, k);
  if (auto v = no_multi_row_criterion(p)) return *v;
  if (auto v = lazy_cycle_criterion(g, k)) return *v;
  if (auto v = redundant_merging_criterion(g, k, config.redundancy_budget)) return *v;
  if (auto v = simplified_criterion(g, k)) return *v;
  DimensionReport r = dimensional_criterion(g, k);
  const Decision d = r.is_e_family ? Decision::EFamily : Decision::NotEFamily;
  return {d, Rule::DimensionalCriterion, std::move(r)};
}

std::vector<Digraph> chain(const Digraph& small, const Digraph& big,
                           const LumpingMap& k) {
  require_nested(small, big, k);
  const int n = small.num_vertices();
  std::vector<Digraph> out = {small};
  std::vector<Edge> current(small.edges().begin(), small.edges().end());

  const Digraph d_small = lumped_graph(small, k).lumped_graph;
  const Digraph d_big = lumped_graph(big, k).lumped_graph;
  for (const Edge& b : d_big.edges()) {
    if (d_small.has_edge(b)) continue;
    for (int y : k.members(b.from)) {
      for (int y2 : k.members(b.to)) {
        if (big.has_edge(y, y2)) {
          current.push_back({y, y2});
          break;
        }
      }
    }
    out.emplace_back(n, current);
  }
  for (const Edge& e : big.edges()) {
    if (out.back().has_edge(e)) continue;
    current.push_back(e);
    out.emplace_back(n, current);
  }
  return out;
}

int chain_length(const Digraph& small, const Digraph& big, const LumpingMap& k) {
  require_nested(small, big, k);
  const Digraph d_small = lumped_graph(small, k).lumped_graph;
  int length = 0;
  std::vector<int> fresh_edges(static_cast<std::size_t>(k.num_classes()) *
                                   k.num_classes(),
                               0);
  for (const Edge& e : big.edges()) {
    if (small.has_edge(e)) continue;
    const int x = k(e.from);
    const int x2 = k(e.to);
    if (d_small.has_edge(x, x2)) {
      ++length;
    } else {
      ++fresh_edges[static_cast<std::size_t>(x) * k.num_classes() + x2];
    }
  }
  for (int x = 0; x < k.num_classes(); ++x) {
    for (int x2 = 0; x2 < k.num_classes(); ++x2) {
      const int c = fresh_edges[static_cast<std::size_t>(x) * k.num_classes() + x2];
      if (c > 0) length += c - k.class_size(x) + 1;
    }
  }
  return length;
}

bool check_monotone_pair(const Digraph& small, const Digraph& big,
                         const LumpingMap& k, const DecideConfig& config) {
  require_nested(small, big, k);
  const Verdict vb = decide(big, k, config);
  if (vb.decision != Decision::EFamily) return true;
  return decide(small, k, config).decision != Decision::NotEFamily;
}

Digraph strip_diagonal_blocks(const Digraph& g, const LumpingMap& k) {
  require_nonvacuous(g, k);
  std::vector<bool> only_loops(k.num_classes(), true);
  std::vector<bool> present(k.num_classes(), false);
  for (const Edge& e : g.edges()) {
    if (k(e.from) != k(e.to)) continue;
    present[k(e.from)] = true;
    if (e.from != e.to) only_loops[k(e.from)] = false;
  }
  std::vector<Edge> drop;
  for (const Edge& e : g.edges()) {
    const int x = k(e.from);
    if (k(e.to) == x && present[x] && only_loops[x]) drop.push_back(e);
  }
  Digraph out = remove_edges(g, drop);
  require_nonvacuous(out, k);
  return out;
}

}  // namespace lumpex
