#include "lumpex/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "lumpex/dimension.hpp"

namespace lumpex {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// One pattern row: '+' is an edge, '0' is not; '|' and blanks are layout.
std::vector<bool> parse_pattern_row(std::string_view row, int line) {
  std::vector<bool> cells;
  for (char c : row) {
    if (c == '+') {
      cells.push_back(true);
    } else if (c == '0') {
      cells.push_back(false);
    } else if (c == '|' || std::isspace(static_cast<unsigned char>(c))) {
      continue;
    } else {
      throw ParseError("pattern row " + std::to_string(line) +
                       ": unexpected character '" + std::string(1, c) + "'");
    }
  }
  return cells;
}

bool is_separator_line(std::string_view line) {
  bool dash = false;
  for (char c : line) {
    if (c == '-') {
      dash = true;
    } else if (c != '|' && !std::isspace(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return dash;
}

Digraph graph_from_rows(const std::vector<std::vector<bool>>& rows, int n) {
  if (static_cast<int>(rows.size()) != n) {
    throw ParseError("pattern has " + std::to_string(rows.size()) +
                     " rows but the lumping covers " + std::to_string(n) + " states");
  }
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) {
      throw ParseError("pattern row " + std::to_string(i) + " has " +
                       std::to_string(rows[i].size()) + " entries, expected " +
                       std::to_string(n));
    }
    for (int j = 0; j < n; ++j) {
      if (rows[i][j]) edges.push_back({i, j});
    }
  }
  return Digraph(n, std::move(edges));
}

LumpingMap lumping_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("\"lumping\" must be an array of class indices");
  std::vector<int> kappa;
  for (const json& v : j) {
    if (!v.is_number_integer()) throw ParseError("lumping entries must be integers");
    kappa.push_back(v.get<int>());
  }
  return LumpingMap(std::move(kappa));
}

FamilySpec parse_json_family(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("family document must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "name" && key != "num_states" && key != "lumping" && key != "edges" &&
        key != "pattern") {
      throw ParseError("unknown field \"" + key + "\"");
    }
  }
  if (!j.contains("lumping")) throw ParseError("missing \"lumping\"");
  const bool has_edges = j.contains("edges");
  const bool has_pattern = j.contains("pattern");
  if (has_edges == has_pattern) {
    throw ParseError("exactly one of \"edges\" and \"pattern\" is required");
  }
  FamilySpec spec;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ParseError("\"name\" must be a string");
    spec.name = j["name"].get<std::string>();
  }
  spec.lumping = lumping_from_json(j["lumping"]);
  const int n = spec.lumping.num_states();
  if (j.contains("num_states")) {
    if (!j["num_states"].is_number_integer() || j["num_states"].get<int>() != n) {
      throw ParseError("\"num_states\" disagrees with the lumping length");
    }
  } else if (has_edges) {
    throw ParseError("edges form requires \"num_states\"");
  }
  if (has_edges) {
    if (!j["edges"].is_array()) throw ParseError("\"edges\" must be an array");
    std::vector<Edge> edges;
    for (const json& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
          !e[1].is_number_integer()) {
        throw ParseError("each edge must be a pair of integers");
      }
      edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    try {
      spec.graph = Digraph(n, std::move(edges));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  } else {
    if (!j["pattern"].is_array()) throw ParseError("\"pattern\" must be an array of rows");
    std::vector<std::vector<bool>> rows;
    int line = 0;
    for (const json& r : j["pattern"]) {
      if (!r.is_string()) throw ParseError("pattern rows must be strings");
      rows.push_back(parse_pattern_row(r.get<std::string>(), line++));
    }
    spec.graph = graph_from_rows(rows, n);
  }
  return spec;
}

FamilySpec parse_text_family(std::string_view text) {
  FamilySpec spec;
  std::optional<LumpingMap> lumping;
  std::vector<std::vector<bool>> rows;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#' || is_separator_line(s)) continue;
    if (s.rfind("name:", 0) == 0) {
      spec.name = trim(std::string_view(s).substr(5));
      continue;
    }
    if (s.rfind("lumping:", 0) == 0) {
      std::istringstream ls(s.substr(8));
      std::vector<int> kappa;
      std::string tok;
      while (ls >> tok) {
        try {
          std::size_t used = 0;
          kappa.push_back(std::stoi(tok, &used));
          if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
          throw ParseError("line " + std::to_string(line) + ": bad class index '" +
                           tok + "'");
        }
      }
      lumping = LumpingMap(std::move(kappa));
      continue;
    }
    rows.push_back(parse_pattern_row(s, line));
  }
  if (!lumping) throw ParseError("missing 'lumping:' line");
  spec.lumping = *lumping;
  spec.graph = graph_from_rows(rows, spec.lumping.num_states());
  return spec;
}

json block_json(const Block& b) { return json::array({b.from, b.to}); }

Block block_from_json(const json& j) { return {j.at(0).get<int>(), j.at(1).get<int>()}; }

json blocks_json(const std::vector<Block>& blocks) {
  json out = json::array();
  for (const Block& b : blocks) out.push_back(block_json(b));
  return out;
}

std::vector<Block> blocks_from_json(const json& j) {
  std::vector<Block> out;
  for (const json& b : j) out.push_back(block_from_json(b));
  return out;
}

ordered_json certificate_json(const Certificate& c) {
  return std::visit(
      [](const auto& cert) -> ordered_json {
        using T = std::decay_t<decltype(cert)>;
        ordered_json j;
        if constexpr (std::is_same_v<T, DegenerateCertificate>) {
          j["num_states"] = cert.num_states;
          j["num_classes"] = cert.num_classes;
        } else if constexpr (std::is_same_v<T, NoMultiRowCertificate>) {
          j["merging_blocks"] = blocks_json(cert.merging_blocks);
        } else if constexpr (std::is_same_v<T, LazyCycleCertificate>) {
          j["cycle"] = cert.cycle;
        } else if constexpr (std::is_same_v<T, RedundancyCertificate>) {
          j["block"] = block_json(cert.block);
          j["classes"] = cert.classes;
        } else if constexpr (std::is_same_v<T, SimplifiedInequality>) {
          j["lhs"] = cert.lhs;
          j["rhs"] = cert.rhs;
        } else {
          j = to_json(cert);
        }
        return j;
      },
      c);
}

json dense_json(const EdgeFunction& f) {
  json rows = json::array();
  for (int i = 0; i < f.size(); ++i) {
    json row = json::array();
    for (int j = 0; j < f.size(); ++j) row.push_back(f(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

StochasticMatrix matrix_from_json(const json& j, const Digraph& g) {
  const int n = g.num_vertices();
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    throw ParseError("witness matrix has the wrong shape");
  }
  std::vector<double> dense;
  for (const json& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw ParseError("witness matrix has the wrong shape");
    }
    for (const json& v : row) dense.push_back(v.get<double>());
  }
  return StochasticMatrix::from(EdgeFunction(g, std::move(dense)));
}

bool same_matrix(const StochasticMatrix& a, const StochasticMatrix& b) {
  return a.graph() == b.graph() &&
         std::equal(a.function().dense().begin(), a.function().dense().end(),
                    b.function().dense().begin(), b.function().dense().end());
}

}  // namespace

FamilySpec parse_family(std::string_view text) {
  const std::string t = trim(text);
  if (!t.empty() && t.front() == '{') return parse_json_family(t);
  return parse_text_family(text);
}

FamilySpec read_family_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_family(buf.str());
}

std::string class_label(int x) {
  if (x >= 0 && x < 26) return std::string(1, static_cast<char>('a' + x));
  return "x" + std::to_string(x);
}

std::vector<std::string> pattern_grid(const Digraph& g, const LumpingMap& k) {
  const int n = g.num_vertices();
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) {
    if (i > 0 && k(i) != k(i - 1)) out.emplace_back();
    std::string row;
    for (int j = 0; j < n; ++j) {
      if (j > 0) row += (k(j) != k(j - 1)) ? " | " : " ";
      row += g.has_edge(i, j) ? '+' : '0';
    }
    out.push_back(std::move(row));
  }
  // Dashed rows match the width of the grid rows.
  for (std::size_t r = 0; r < out.size(); ++r) {
    if (!out[r].empty()) continue;
    std::string sep = out[r + 1];
    for (char& c : sep) c = (c == '|') ? '|' : '-';
    out[r] = std::move(sep);
  }
  return out;
}

ordered_json family_to_json(const FamilySpec& spec, FamilyFormat format) {
  ordered_json j;
  if (spec.name) j["name"] = *spec.name;
  const auto labels = spec.lumping.labels();
  if (format == FamilyFormat::Edges) {
    j["num_states"] = spec.graph.num_vertices();
    j["lumping"] = std::vector<int>(labels.begin(), labels.end());
    ordered_json edges = ordered_json::array();
    for (const Edge& e : spec.graph.edges()) edges.push_back({e.from, e.to});
    j["edges"] = std::move(edges);
  } else {
    j["lumping"] = std::vector<int>(labels.begin(), labels.end());
    ordered_json rows = ordered_json::array();
    for (const std::string& r : pattern_grid(spec.graph, spec.lumping)) {
      if (r.find('-') == std::string::npos) rows.push_back(r);
    }
    j["pattern"] = std::move(rows);
  }
  return j;
}

std::string emit_family_json(const FamilySpec& spec, FamilyFormat format) {
  return family_to_json(spec, format).dump(2) + "\n";
}

std::string emit_family_text(const FamilySpec& spec) {
  std::string out;
  if (spec.name) out += "name: " + *spec.name + "\n";
  out += "lumping:";
  for (int x : spec.lumping.labels()) out += " " + std::to_string(x);
  out += "\n";
  for (const std::string& r : pattern_grid(spec.graph, spec.lumping)) out += r + "\n";
  return out;
}

ProfileSummary summarize(const BlockProfile& p) {
  return {static_cast<int>(p.blocks.size()), static_cast<int>(p.u_blocks.size()),
          static_cast<int>(p.r_edges.size()), p.merging_blocks(),
          p.multi_row_merging_blocks()};
}

bool operator==(const Report& a, const Report& b) {
  if (a.schema_version != b.schema_version || a.name != b.name ||
      !(a.verdict == b.verdict) || !(a.dimensions == b.dimensions) ||
      !(a.profile == b.profile) || a.timing_ms != b.timing_ms ||
      a.witness.has_value() != b.witness.has_value()) {
    return false;
  }
  if (!a.witness) return true;
  return a.witness->t == b.witness->t && a.witness->violation == b.witness->violation &&
         same_matrix(a.witness->p0, b.witness->p0) &&
         same_matrix(a.witness->p1, b.witness->p1);
}

Report build_report(const FamilySpec& spec, const DecideConfig& config) {
  Report r;
  r.name = spec.name;
  r.verdict = decide(spec.graph, spec.lumping, config);
  r.dimensions = dimensional_criterion(spec.graph, spec.lumping);
  r.profile = summarize(block_profile(spec.graph, spec.lumping));
  return r;
}

ordered_json to_json(const Verdict& v) {
  ordered_json j;
  j["verdict"] = std::string(to_string(v.decision));
  j["rule"] = std::string(to_string(v.rule));
  j["certificate"] = certificate_json(v.certificate);
  return j;
}

ordered_json to_json(const DimensionReport& d) {
  ordered_json j;
  j["manifold_dim"] = d.manifold_dim;
  j["span_dim"] = d.span_dim;
  j["n_dim"] = d.n_dim;
  j["ehull_sum_dim"] = d.ehull_sum_dim;
  j["target"] = d.target;
  j["is_e_family"] = d.is_e_family;
  return j;
}

ordered_json to_json(const Witness& w) {
  ordered_json j;
  j["t"] = w.t;
  j["violation"] = w.violation;
  j["p0"] = dense_json(w.p0.function());
  j["p1"] = dense_json(w.p1.function());
  return j;
}

ordered_json to_json(const Report& r) {
  ordered_json j;
  j["schema_version"] = r.schema_version;
  if (r.name) j["name"] = *r.name;
  const ordered_json verdict = to_json(r.verdict);
  for (const auto& [key, value] : verdict.items()) j[key] = value;
  j["dimensions"] = to_json(r.dimensions);
  ordered_json p;
  p["blocks"] = r.profile.num_blocks;
  p["u"] = r.profile.num_u;
  p["r"] = r.profile.num_r;
  p["merging_blocks"] = blocks_json(r.profile.merging_blocks);
  p["multi_row_merging_blocks"] = blocks_json(r.profile.multi_row_merging_blocks);
  j["profile"] = std::move(p);
  if (r.witness) j["witness"] = to_json(*r.witness);
  if (r.timing_ms) j["timing_ms"] = *r.timing_ms;
  return j;
}

ordered_json to_json(const FamilyClass& c) {
  ordered_json j;
  j["key"] = to_string(c.key);
  j["class_size"] = c.class_size;
  ordered_json rows = ordered_json::array();
  for (const std::string& r : pattern_grid(c.graph, c.lumping)) {
    if (r.find('-') == std::string::npos) rows.push_back(r);
  }
  j["pattern"] = std::move(rows);
  const ordered_json verdict = to_json(c.verdict);
  for (const auto& [key, value] : verdict.items()) j[key] = value;
  return j;
}

DimensionReport dimensions_from_json(const json& j) {
  DimensionReport d;
  d.manifold_dim = j.at("manifold_dim").get<int>();
  d.span_dim = j.at("span_dim").get<int>();
  d.n_dim = j.at("n_dim").get<int>();
  d.ehull_sum_dim = j.at("ehull_sum_dim").get<int>();
  d.target = j.at("target").get<int>();
  d.is_e_family = j.at("is_e_family").get<bool>();
  return d;
}

Verdict verdict_from_json(const json& j) {
  Verdict v;
  const auto decision = parse_decision(j.at("verdict").get<std::string>());
  const auto rule = parse_rule(j.at("rule").get<std::string>());
  if (!decision || !rule) throw ParseError("unknown verdict or rule name");
  v.decision = *decision;
  v.rule = *rule;
  const json& c = j.at("certificate");
  switch (*rule) {
    case Rule::Degenerate:
      v.certificate = DegenerateCertificate{c.at("num_states").get<int>(),
                                            c.at("num_classes").get<int>()};
      break;
    case Rule::NoMultiRowMerging:
      v.certificate = NoMultiRowCertificate{blocks_from_json(c.at("merging_blocks"))};
      break;
    case Rule::LazyCycle:
      v.certificate = LazyCycleCertificate{c.at("cycle").get<std::vector<int>>()};
      break;
    case Rule::RedundantMergingBlock:
      v.certificate = RedundancyCertificate{block_from_json(c.at("block")),
                                            c.at("classes").get<std::vector<int>>()};
      break;
    case Rule::SimplifiedInequality:
      v.certificate = SimplifiedInequality{c.at("lhs").get<int>(), c.at("rhs").get<int>()};
      break;
    case Rule::DimensionalCriterion:
      v.certificate = dimensions_from_json(c);
      break;
  }
  return v;
}

Witness witness_from_json(const json& j, const Digraph& g) {
  return Witness{matrix_from_json(j.at("p0"), g), matrix_from_json(j.at("p1"), g),
                 j.at("t").get<double>(), j.at("violation").get<double>()};
}

Report report_from_json(const json& j, const Digraph& g) {
  Report r;
  r.schema_version = j.at("schema_version").get<int>();
  if (r.schema_version != kReportSchemaVersion) {
    throw ParseError("unsupported report schema version " +
                     std::to_string(r.schema_version));
  }
  if (j.contains("name")) r.name = j["name"].get<std::string>();
  r.verdict = verdict_from_json(j);
  r.dimensions = dimensions_from_json(j.at("dimensions"));
  const json& p = j.at("profile");
  r.profile.num_blocks = p.at("blocks").get<int>();
  r.profile.num_u = p.at("u").get<int>();
  r.profile.num_r = p.at("r").get<int>();
  r.profile.merging_blocks = blocks_from_json(p.at("merging_blocks"));
  r.profile.multi_row_merging_blocks = blocks_from_json(p.at("multi_row_merging_blocks"));
  if (j.contains("witness")) r.witness = witness_from_json(j["witness"], g);
  if (j.contains("timing_ms")) r.timing_ms = j["timing_ms"].get<double>();
  return r;
}

}  // namespace lumpex
