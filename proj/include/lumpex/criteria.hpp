#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "lumpex/digraph.hpp"
#include "lumpex/dimension.hpp"
#include "lumpex/lumping.hpp"

namespace lumpex {

enum class Decision { EFamily, NotEFamily };

enum class Rule {
  Degenerate,
  NoMultiRowMerging,
  LazyCycle,
  RedundantMergingBlock,
  SimplifiedInequality,
  DimensionalCriterion,
};

std::string_view to_string(Decision d);
std::string_view to_string(Rule r);
std::optional<Decision> parse_decision(std::string_view s);
std::optional<Rule> parse_rule(std::string_view s);

struct DegenerateCertificate {
  int num_states = 0;
  int num_classes = 0;
  friend bool operator==(const DegenerateCertificate&,
                         const DegenerateCertificate&) = default;
};

/// Merging blocks present (all single-row).
struct NoMultiRowCertificate {
  std::vector<Block> merging_blocks;
  friend bool operator==(const NoMultiRowCertificate&,
                         const NoMultiRowCertificate&) = default;
};

/// Classes in the order the off-diagonal lumped cycle visits them, from 0.
struct LazyCycleCertificate {
  std::vector<int> cycle;
  friend bool operator==(const LazyCycleCertificate&,
                         const LazyCycleCertificate&) = default;
};

struct RedundancyCertificate {
  Block block;
  /// 𝒯, ascending.
  std::vector<int> classes;
  friend bool operator==(const RedundancyCertificate&,
                         const RedundancyCertificate&) = default;
};

using Certificate =
    std::variant<DegenerateCertificate, NoMultiRowCertificate, LazyCycleCertificate,
                 RedundancyCertificate, SimplifiedInequality, DimensionReport>;

struct Verdict {
  Decision decision = Decision::EFamily;
  Rule rule = Rule::Degenerate;
  Certificate certificate;
};

inline bool operator==(const Verdict& a, const Verdict& b) {
  return a.decision == b.decision && a.rule == b.rule &&
         a.certificate == b.certificate;
}

/// |X| = 1 or |X| = |Y|.
bool is_degenerate(const LumpingMap& k);

std::optional<Verdict> no_multi_row_criterion(const BlockProfile& profile);

std::optional<Verdict> lazy_cycle_criterion(const Digraph& g, const LumpingMap& k);

struct RedundancyResult {
  enum class Status { Redundant, NotRedundant, Unknown };
  Status status = Status::NotRedundant;
  /// 𝒯 when Redundant.
  std::vector<int> classes;
  /// Number of candidate sets examined.
  std::uint64_t examined = 0;
};

/// Searches 𝒯 = 𝒳 first, then every 𝒯 ⊇ {x0, x0'} by increasing size
/// (lexicographic within a size). Throws std::invalid_argument when the
/// block is not in D.
RedundancyResult is_redundant_block(const Digraph& g, const LumpingMap& k,
                                    Block block,
                                    std::uint64_t budget = std::uint64_t{1} << 16);

/// First redundant multi-row merging block, blocks taken in lexicographic
/// order. Each block gets its own search budget.
std::optional<Verdict> redundant_merging_criterion(
    const Digraph& g, const LumpingMap& k,
    std::uint64_t budget = std::uint64_t{1} << 16);

std::optional<Verdict> simplified_criterion(const Digraph& g, const LumpingMap& k);

struct DecideConfig {
  std::uint64_t redundancy_budget = std::uint64_t{1} << 16;
};

/// Layered decision. Throws VacuousFamilyError on an empty family.
Verdict decide(const Digraph& g, const LumpingMap& k, const DecideConfig& config = {});

/// Strictly increasing chain of edge sets from `small` to `big`: one
/// block-link per new lumped block (lexicographic), then single edges in
/// lexicographic order. Throws std::invalid_argument unless small ⊆ big;
/// VacuousFamilyError when either end is vacuous.
std::vector<Digraph> chain(const Digraph& small, const Digraph& big,
                           const LumpingMap& k);

/// Closed-form number of steps between `small` and `big`.
int chain_length(const Digraph& small, const Digraph& big, const LumpingMap& k);

/// false only when `big` is an e-family and `small` is not.
bool check_monotone_pair(const Digraph& small, const Digraph& big,
                         const LumpingMap& k, const DecideConfig& config = {});

/// Drops every diagonal block (x,x) whose edges are exactly self-loops.
/// Throws VacuousFamilyError when the input or the result is vacuous.
Digraph strip_diagonal_blocks(const Digraph& g, const LumpingMap& k);

}  // namespace lumpex
