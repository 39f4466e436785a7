#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "lumpex/digraph.hpp"
#include "oracles.hpp"

using namespace lumpex;

namespace {

Digraph cycle3() { return Digraph(3, {{0, 1}, {1, 2}, {2, 0}}); }

void check_against_oracle(const Digraph& g) {
  const auto comps = scc(g);
  std::vector<int> seen;
  for (const auto& c : comps) {
    REQUIRE(std::is_sorted(c.begin(), c.end()));
    seen.insert(seen.end(), c.begin(), c.end());
  }
  std::sort(seen.begin(), seen.end());
  REQUIRE(static_cast<int>(seen.size()) == g.num_vertices());
  for (int i = 0; i < g.num_vertices(); ++i) REQUIRE(seen[i] == i);
  for (std::size_t i = 1; i < comps.size(); ++i) {
    REQUIRE(comps[i - 1].front() < comps[i].front());
  }

  const auto r = oracle::reachability(g);
  for (const auto& c : comps) {
    for (int a : c) {
      for (int b : c) REQUIRE(r[a][b]);
    }
  }
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (std::size_t j = i + 1; j < comps.size(); ++j) {
      const int a = comps[i].front();
      const int b = comps[j].front();
      REQUIRE_FALSE((r[a][b] && r[b][a]));
    }
  }
  REQUIRE(strongly_connected(g) == oracle::strongly_connected(g));
  REQUIRE(strongly_connected(g) == (comps.size() <= 1));
}

}  // namespace

TEST_CASE("digraph rejects bad edges") {
  CHECK_THROWS_AS(Digraph(2, {{0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(Digraph(2, {{-1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Digraph(2, {{0, 1}, {0, 1}}), std::invalid_argument);
}

TEST_CASE("digraph sorts edges and indexes them") {
  const Digraph g(3, {{2, 0}, {0, 1}, {1, 2}});
  REQUIRE(g.num_edges() == 3);
  CHECK(g.edges()[0] == Edge{0, 1});
  CHECK(g.edges()[2] == Edge{2, 0});
  CHECK(g.edge_index({1, 2}) == 1u);
  CHECK_FALSE(g.edge_index({1, 0}).has_value());
  CHECK(g.has_edge(2, 0));
  CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("strongly_connected examples") {
  CHECK(strongly_connected(cycle3()));
  CHECK_FALSE(strongly_connected(Digraph(2, {{0, 1}})));
  CHECK(strongly_connected(Digraph(1, {})));
  CHECK(strongly_connected(Digraph(1, {{0, 0}})));
}

TEST_CASE("scc examples") {
  CHECK(scc(cycle3()) == std::vector<std::vector<int>>{{0, 1, 2}});
  CHECK(scc(Digraph(2, {{0, 1}})) == std::vector<std::vector<int>>{{0}, {1}});
  const Digraph two(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
  CHECK(scc(two) == std::vector<std::vector<int>>{{0, 1}, {2, 3}});
}

TEST_CASE("induced_subgraph examples") {
  const Digraph g = cycle3();
  const std::vector<int> all = {0, 1, 2};
  CHECK(induced_subgraph(g, all).graph == g);
  const std::vector<int> keep = {0, 1};
  const auto sub = induced_subgraph(g, keep);
  CHECK(sub.graph == Digraph(2, {{0, 1}}));
  CHECK(sub.original_vertex == keep);
  const auto empty = induced_subgraph(g, std::vector<int>{});
  CHECK(empty.graph.num_vertices() == 0);
  CHECK(empty.graph.num_edges() == 0);
  const std::vector<int> relabel = {0, 2};
  CHECK(induced_subgraph(g, relabel).graph == Digraph(2, {{1, 0}}));
}

TEST_CASE("remove_edges examples") {
  const Digraph g = cycle3();
  CHECK(remove_edges(g, std::vector<Edge>{}) == g);
  const std::vector<Edge> one = {{0, 1}};
  CHECK_FALSE(strongly_connected(remove_edges(g, one)));
  const std::vector<Edge> all(g.edges().begin(), g.edges().end());
  CHECK(remove_edges(g, all).num_edges() == 0);
  const std::vector<Edge> missing = {{1, 0}};
  CHECK_THROWS_AS(remove_edges(g, missing), std::invalid_argument);
}

TEST_CASE("scc and induced subgraphs agree with Floyd-Warshall, n <= 4 exhaustive") {
  for (int n = 1; n <= 4; ++n) {
    const std::uint64_t total = std::uint64_t{1} << (n * n);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      const Digraph g = oracle::graph_from_mask(n, mask);
      check_against_oracle(g);
      for (unsigned keep_mask = 0; keep_mask < (1U << n); ++keep_mask) {
        std::vector<int> keep;
        for (int v = 0; v < n; ++v) {
          if (keep_mask >> v & 1U) keep.push_back(v);
        }
        const auto sub = induced_subgraph(g, keep);
        for (const Edge& e : sub.graph.edges()) {
          REQUIRE(g.has_edge(sub.original_vertex[e.from], sub.original_vertex[e.to]));
        }
        std::size_t expected = 0;
        for (const Edge& e : g.edges()) {
          if ((keep_mask >> e.from & 1U) && (keep_mask >> e.to & 1U)) ++expected;
        }
        REQUIRE(sub.graph.num_edges() == expected);
        REQUIRE(strongly_connected(sub.graph) == oracle::strongly_connected(sub.graph));
      }
    }
  }
}

TEST_CASE("scc agrees with Floyd-Warshall on every 5-vertex loop pattern") {
  // Self-loops cannot change reachability, so every off-diagonal pattern is
  // visited once with a random loop set, and every subset is tried for a
  // random keep set.
  std::mt19937_64 rng(5);
  const int n = 5;
  std::vector<int> off;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) off.push_back(i * n + j);
    }
  }
  for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << off.size()); ++pattern) {
    std::uint64_t mask = 0;
    for (std::size_t b = 0; b < off.size(); ++b) {
      if (pattern >> b & 1U) mask |= std::uint64_t{1} << off[b];
    }
    const std::uint64_t loops = rng() & 31U;
    for (int v = 0; v < n; ++v) {
      if (loops >> v & 1U) mask |= std::uint64_t{1} << (v * n + v);
    }
    const Digraph g = oracle::graph_from_mask(n, mask);
    REQUIRE(strongly_connected(g) == oracle::strongly_connected(g));
    REQUIRE((scc(g).size() == 1) == oracle::strongly_connected(g));
    std::vector<int> keep;
    const auto keep_mask = rng();
    for (int v = 0; v < n; ++v) {
      if (keep_mask >> v & 1U) keep.push_back(v);
    }
    const auto sub = induced_subgraph(g, keep);
    REQUIRE(strongly_connected(sub.graph) == oracle::strongly_connected(sub.graph));
  }
}
