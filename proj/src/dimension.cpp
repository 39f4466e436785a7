#include "lumpex/dimension.hpp"

#include <algorithm>
#include <vector>

namespace lumpex {

namespace {

IntVector indicator(const Digraph& g, std::span<const Edge> edges) {
  IntVector v(g.num_edges(), 0);
  for (const Edge& e : edges) v[*g.edge_index(e)] = 1;
  return v;
}

int sum_source_sizes(const BlockProfile& p) {
  int total = 0;
  for (const Block& b : p.blocks) total += p.class_sizes[b.from];
  return total;
}

}  // namespace

std::vector<IntVector> n_basis(const Digraph& g) {
  const auto edges = g.edges();
  std::vector<IntVector> out;
  out.emplace_back(edges.size(), 1);
  for (int y0 = 1; y0 < g.num_vertices(); ++y0) {
    IntVector v(edges.size(), 0);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      v[i] = (edges[i].to == y0 ? 1 : 0) - (edges[i].from == y0 ? 1 : 0);
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<IntVector> cone_basis(const Digraph& g, const LumpingMap& k) {
  const BlockProfile p = block_profile(g, k);
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    const Block b = p.blocks[i];
    if (std::binary_search(p.u_blocks.begin(), p.u_blocks.end(), b)) {
      out.push_back(indicator(g, p.anchors[i]));
    }
    for (const Edge& e : p.r_edges) {
      if (k(e.from) == b.from && k(e.to) == b.to) {
        const Edge one[] = {e};
        out.push_back(indicator(g, one));
      }
    }
  }
  return out;
}

int manifold_dim(const Digraph& g, const LumpingMap& k) {
  const BlockProfile p = block_profile(g, k);
  return static_cast<int>(g.num_edges()) - sum_source_sizes(p) +
         static_cast<int>(p.blocks.size()) - k.num_classes();
}

int span_dim(const Digraph& g, const LumpingMap& k) {
  const BlockProfile p = block_profile(g, k);
  return static_cast<int>(p.u_blocks.size() + p.r_edges.size());
}

int ehull_dim(const Digraph& g, const LumpingMap& k) {
  std::vector<IntVector> all = cone_basis(g, k);
  for (IntVector& v : n_basis(g)) all.push_back(std::move(v));
  return rank(all);
}

DimensionReport dimensional_criterion(const Digraph& g, const LumpingMap& k) {
  DimensionReport r;
  r.manifold_dim = manifold_dim(g, k);
  r.span_dim = span_dim(g, k);
  r.n_dim = g.num_vertices();
  r.ehull_sum_dim = ehull_dim(g, k);
  r.target = r.manifold_dim + g.num_vertices();
  r.is_e_family = r.ehull_sum_dim == r.target;
  return r;
}

SimplifiedInequality simplified_inequality(const Digraph& g, const LumpingMap& k) {
  const BlockProfile p = block_profile(g, k);
  SimplifiedInequality s;
  s.lhs = sum_source_sizes(p);
  s.rhs = static_cast<int>(p.blocks.size() - p.u_blocks.size()) +
          (g.num_vertices() - k.num_classes()) +
          static_cast<int>(g.num_edges() - p.r_edges.size());
  return s;
}

bool simplified_necessary(const Digraph& g, const LumpingMap& k) {
  return simplified_inequality(g, k).fires();
}

}  // namespace lumpex
