#include "lumpex/census.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <string_view>
#include <thread>
#include <utility>

namespace lumpex {

namespace {

using Mask = std::uint32_t;

// Maps old state -> new state, for every admissible relabeling of `k` onto
// the contiguous ascending-size layout.
std::vector<std::vector<int>> relabelings(const LumpingMap& k) {
  const int m = k.num_classes();
  std::vector<int> order(m);
  for (int x = 0; x < m; ++x) order[x] = x;
  std::vector<int> sorted = k.class_sizes();
  std::sort(sorted.begin(), sorted.end());

  std::vector<std::vector<int>> out;
  std::sort(order.begin(), order.end());
  do {
    bool ok = true;
    for (int j = 0; j < m && ok; ++j) ok = k.class_size(order[j]) == sorted[j];
    if (!ok) continue;
    // Within-class orders, advanced like an odometer.
    std::vector<std::vector<int>> inner(m);
    for (int j = 0; j < m; ++j) {
      auto mem = k.members(order[j]);
      inner[j].assign(mem.begin(), mem.end());
    }
    while (true) {
      std::vector<int> map(k.num_states());
      int next = 0;
      for (int j = 0; j < m; ++j) {
        for (int y : inner[j]) map[y] = next++;
      }
      out.push_back(std::move(map));
      int j = m - 1;
      while (j >= 0 && !std::next_permutation(inner[j].begin(), inner[j].end())) --j;
      if (j < 0) break;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

// Bit for edge (i,j) sits at position n²-1-(i n + j), so numeric order is
// the lexicographic order of the row-major string.
Mask edge_bit(int n, int i, int j) {
  return Mask{1} << (n * n - 1 - (i * n + j));
}

Mask relabeled_mask(const Digraph& g, const std::vector<int>& map) {
  const int n = g.num_vertices();
  Mask out = 0;
  for (const Edge& e : g.edges()) out |= edge_bit(n, map[e.from], map[e.to]);
  return out;
}

std::string mask_bits(Mask mask, int n) {
  std::string bits(static_cast<std::size_t>(n) * n, '0');
  for (int p = 0; p < n * n; ++p) {
    if (mask & (Mask{1} << (n * n - 1 - p))) bits[p] = '1';
  }
  return bits;
}

Digraph graph_from_mask(Mask mask, int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (mask & edge_bit(n, i, j)) edges.push_back({i, j});
    }
  }
  return Digraph(n, std::move(edges));
}

Mask min_relabeled(const Digraph& g, const std::vector<std::vector<int>>& maps) {
  Mask best = ~Mask{0};
  for (const auto& map : maps) best = std::min(best, relabeled_mask(g, map));
  return best;
}

// Row-major bitmask enumeration with cheap vacuity pruning. Bit i*n+j of
// `raw` is edge (i,j).
struct FastCheck {
  int n = 0;
  int m = 0;
  std::vector<int> kappa;
  std::vector<Mask> class_mask;

  explicit FastCheck(const LumpingMap& k)
      : n(k.num_states()), m(k.num_classes()), kappa(k.labels().begin(), k.labels().end()) {
    class_mask.assign(m, 0);
    for (int y = 0; y < n; ++y) class_mask[kappa[y]] |= Mask{1} << y;
  }

  bool nonvacuous(Mask raw) const {
    const Mask full = (Mask{1} << n) - 1;
    std::array<Mask, kMaxCensusStates> rows{};
    std::array<Mask, kMaxCensusStates> cols{};
    for (int y = 0; y < n; ++y) {
      rows[y] = (raw >> (y * n)) & full;
      if (rows[y] == 0) return false;
    }
    // Block-row completeness: every member of a class hits the same classes.
    std::array<Mask, kMaxCensusStates> hits{};
    for (int y = 0; y < n; ++y) {
      Mask h = 0;
      for (int x = 0; x < m; ++x) {
        if (rows[y] & class_mask[x]) h |= Mask{1} << x;
      }
      hits[y] = h;
    }
    for (int y = 0; y < n; ++y) {
      for (int y2 = y + 1; y2 < n; ++y2) {
        if (kappa[y] == kappa[y2] && hits[y] != hits[y2]) return false;
      }
    }
    for (int y = 0; y < n; ++y) {
      for (int y2 = 0; y2 < n; ++y2) {
        if (rows[y] & (Mask{1} << y2)) cols[y2] |= Mask{1} << y;
      }
    }
    return reaches_all(rows) && reaches_all(cols);
  }

  bool reaches_all(const std::array<Mask, kMaxCensusStates>& adj) const {
    const Mask full = (Mask{1} << n) - 1;
    Mask seen = 1;
    Mask frontier = 1;
    while (frontier) {
      Mask next = 0;
      for (int y = 0; y < n; ++y) {
        if (frontier & (Mask{1} << y)) next |= adj[y];
      }
      frontier = next & ~seen;
      seen |= next;
    }
    return seen == full;
  }
};

Digraph graph_from_raw(Mask raw, int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (raw & (Mask{1} << (i * n + j))) edges.push_back({i, j});
    }
  }
  return Digraph(n, std::move(edges));
}

void check_census_size(int n) {
  if (n < 1 || n > kMaxCensusStates) {
    throw std::invalid_argument("census supports 1.." + std::to_string(kMaxCensusStates) +
                                " states, got " + std::to_string(n));
  }
}

constexpr std::array<std::string_view, 12> kThreeStateGrids = {
    "0++/+00/+00", "+++/+00/+00", "00+/+0+/++0", "00+/++0/++0",
    "+0+/++0/++0", "0++/++0/++0", "+0+/+0+/++0", "+++/++0/++0",
    "0++/+0+/++0", "+++/+0+/++0", "0++/++0/+0+", "+++/++0/+0+",
};

Digraph parse_grid(std::string_view grid, int n) {
  std::vector<Edge> edges;
  int row = 0;
  int col = 0;
  for (char c : grid) {
    if (c == '/') {
      ++row;
      col = 0;
      continue;
    }
    if (c == '+') edges.push_back({row, col});
    ++col;
  }
  return Digraph(n, std::move(edges));
}

}  // namespace

std::string to_string(const CanonicalForm& c) {
  std::string out;
  for (std::size_t i = 0; i < c.class_sizes.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(c.class_sizes[i]);
  }
  return out + ":" + c.bits;
}

CanonicalForm canonical_form(const Digraph& g, const LumpingMap& k) {
  if (g.num_vertices() != k.num_states()) {
    throw std::invalid_argument("canonical_form: lumping size mismatch");
  }
  check_census_size(g.num_vertices());
  CanonicalForm c;
  c.class_sizes = k.class_sizes();
  std::sort(c.class_sizes.begin(), c.class_sizes.end());
  c.bits = mask_bits(min_relabeled(g, relabelings(k)), g.num_vertices());
  return c;
}

Digraph canonical_graph(const CanonicalForm& c) {
  int n = 0;
  for (int s : c.class_sizes) n += s;
  if (c.bits.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("canonical form has the wrong bit count");
  }
  std::vector<Edge> edges;
  for (int p = 0; p < n * n; ++p) {
    if (c.bits[p] == '1') edges.push_back({p / n, p % n});
  }
  return Digraph(n, std::move(edges));
}

LumpingMap canonical_lumping(const CanonicalForm& c) {
  return LumpingMap::from_class_sizes(c.class_sizes);
}

void for_each_nonvacuous(const LumpingMap& k,
                         const std::function<void(const Digraph&)>& visit) {
  const int n = k.num_states();
  check_census_size(n);
  const FastCheck check(k);
  const std::uint64_t total = std::uint64_t{1} << (n * n);
  for (std::uint64_t raw = 0; raw < total; ++raw) {
    if (check.nonvacuous(static_cast<Mask>(raw))) {
      visit(graph_from_raw(static_cast<Mask>(raw), n));
    }
  }
}

std::vector<FamilyClass> enumerate_families(int num_states,
                                            std::span<const int> class_sizes,
                                            int threads) {
  check_census_size(num_states);
  std::vector<int> sizes(class_sizes.begin(), class_sizes.end());
  std::sort(sizes.begin(), sizes.end());
  int sum = 0;
  for (int s : sizes) sum += s;
  if (sum != num_states) {
    throw std::invalid_argument("class sizes do not add up to the state count");
  }
  const LumpingMap k = LumpingMap::from_class_sizes(sizes);
  const FastCheck check(k);
  const auto maps = relabelings(k);
  const int n = num_states;
  const std::uint64_t total = std::uint64_t{1} << (n * n);
  threads = std::max(1, threads);

  // Canonical mask -> labeled count, one map per worker, merged afterwards.
  std::vector<std::map<Mask, std::uint64_t>> partial(threads);
  auto scan = [&](int worker) {
    for (std::uint64_t raw = worker; raw < total; raw += threads) {
      if (!check.nonvacuous(static_cast<Mask>(raw))) continue;
      const Digraph g = graph_from_raw(static_cast<Mask>(raw), n);
      ++partial[worker][min_relabeled(g, maps)];
    }
  };
  if (threads == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(scan, w);
    for (auto& t : pool) t.join();
  }
  std::map<Mask, std::uint64_t> merged;
  for (const auto& p : partial) {
    for (const auto& [key, count] : p) merged[key] += count;
  }

  std::vector<FamilyClass> out;
  out.reserve(merged.size());
  for (const auto& [key, count] : merged) {
    Digraph g = graph_from_mask(key, n);
    Verdict v = decide(g, k);
    out.push_back({CanonicalForm{sizes, mask_bits(key, n)}, std::move(g), k,
                   std::move(v), count});
  }
  return out;
}

std::span<const std::string_view> three_state_reference_grids() {
  return kThreeStateGrids;
}

ThreeStateReport classify_three_state(int threads) {
  static constexpr int kSizes[] = {1, 2};
  ThreeStateReport r;
  r.classes = enumerate_families(3, kSizes, threads);
  r.num_classes = static_cast<int>(r.classes.size());
  std::vector<CanonicalForm> e_keys;
  for (const FamilyClass& c : r.classes) {
    if (c.verdict.decision == Decision::EFamily) e_keys.push_back(c.key);
  }
  r.num_e_families = static_cast<int>(e_keys.size());

  const LumpingMap k = LumpingMap::from_class_sizes(kSizes);
  std::vector<CanonicalForm> ref_keys;
  for (std::string_view grid : kThreeStateGrids) {
    ref_keys.push_back(canonical_form(parse_grid(grid, 3), k));
  }
  std::sort(ref_keys.begin(), ref_keys.end());
  const bool distinct =
      std::adjacent_find(ref_keys.begin(), ref_keys.end()) == ref_keys.end();
  r.matches_reference = distinct && ref_keys == e_keys;
  return r;
}

}  // namespace lumpex
