#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lumpex/census.hpp"
#include "lumpex/criteria.hpp"
#include "lumpex/digraph.hpp"
#include "lumpex/lumping.hpp"
#include "lumpex/witness.hpp"

namespace lumpex {

enum class FamilyFormat { Edges, Pattern };

struct FamilySpec {
  std::optional<std::string> name;
  Digraph graph;
  LumpingMap lumping;

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

/// Malformed input document.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// JSON (`{...}`, edges or pattern form) or pattern-grid text. Throws
/// ParseError, or std::invalid_argument for a non-surjective lumping.
FamilySpec parse_family(std::string_view text);
FamilySpec read_family_file(const std::string& path);

nlohmann::ordered_json family_to_json(const FamilySpec& spec, FamilyFormat format);
std::string emit_family_json(const FamilySpec& spec, FamilyFormat format);
/// Text grid with `|` between classes and dashed lines between class rows.
std::string emit_family_text(const FamilySpec& spec);

/// "a", "b", ... then "x26", "x27", ...
std::string class_label(int x);

/// Rows of `+`/`0`; separators wherever κ changes between neighbours.
std::vector<std::string> pattern_grid(const Digraph& g, const LumpingMap& k);

struct ProfileSummary {
  int num_blocks = 0;
  int num_u = 0;
  int num_r = 0;
  std::vector<Block> merging_blocks;
  std::vector<Block> multi_row_merging_blocks;

  friend bool operator==(const ProfileSummary&, const ProfileSummary&) = default;
};

ProfileSummary summarize(const BlockProfile& p);

inline constexpr int kReportSchemaVersion = 1;

struct Report {
  int schema_version = kReportSchemaVersion;
  std::optional<std::string> name;
  Verdict verdict;
  DimensionReport dimensions;
  ProfileSummary profile;
  std::optional<Witness> witness;
  std::optional<double> timing_ms;
};

bool operator==(const Report& a, const Report& b);

Report build_report(const FamilySpec& spec, const DecideConfig& config = {});

nlohmann::ordered_json to_json(const Verdict& v);
nlohmann::ordered_json to_json(const DimensionReport& d);
nlohmann::ordered_json to_json(const Witness& w);
nlohmann::ordered_json to_json(const Report& r);
nlohmann::ordered_json to_json(const FamilyClass& c);

Verdict verdict_from_json(const nlohmann::json& j);
DimensionReport dimensions_from_json(const nlohmann::json& j);
Witness witness_from_json(const nlohmann::json& j, const Digraph& g);
/// Needs the family to rebuild witness matrices on their support.
Report report_from_json(const nlohmann::json& j, const Digraph& g);

}  // namespace lumpex
