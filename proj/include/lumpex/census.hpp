#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lumpex/criteria.hpp"
#include "lumpex/digraph.hpp"
#include "lumpex/lumping.hpp"

namespace lumpex {

/// Class sizes (ascending) and the smallest row-major adjacency bit-string
/// over every relabeling onto the contiguous layout with those sizes.
struct CanonicalForm {
  std::vector<int> class_sizes;
  std::string bits;

  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

/// e.g. "1,2:011100100".
std::string to_string(const CanonicalForm& c);

CanonicalForm canonical_form(const Digraph& g, const LumpingMap& k);

/// Graph and lumping spelled out by a canonical form.
Digraph canonical_graph(const CanonicalForm& c);
LumpingMap canonical_lumping(const CanonicalForm& c);

struct FamilyClass {
  CanonicalForm key;
  /// The canonical member.
  Digraph graph;
  LumpingMap lumping;
  Verdict verdict;
  /// Labeled edge sets (for the contiguous lumping) falling in this class.
  std::uint64_t class_size = 0;
};

inline constexpr int kMaxCensusStates = 5;

/// Calls `visit` on every edge set E ⊆ Y² with W_κ(Y,E) non-empty, in
/// increasing row-major bitmask order. Throws std::invalid_argument for
/// more than kMaxCensusStates states.
void for_each_nonvacuous(const LumpingMap& k,
                         const std::function<void(const Digraph&)>& visit);

/// All non-vacuous families with the given class sizes, grouped up to
/// relabeling and classified by decide(), sorted by key. The result does
/// not depend on `threads`.
std::vector<FamilyClass> enumerate_families(int num_states,
                                            std::span<const int> class_sizes,
                                            int threads = 1);

struct ThreeStateReport {
  std::vector<FamilyClass> classes;
  int num_classes = 0;
  int num_e_families = 0;
  /// e-family classes coincide with the reference list, one-to-one.
  bool matches_reference = false;
};

/// Reference e-families on three states with S_a = {0}, S_b = {1,2}; rows
/// separated by '/'.
std::span<const std::string_view> three_state_reference_grids();

ThreeStateReport classify_three_state(int threads = 1);

}  // namespace lumpex
