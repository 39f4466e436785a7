#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lumpex/io.hpp"
#include "lumpex/witness.hpp"
#include "oracles.hpp"

using namespace lumpex;

namespace {

std::vector<std::string> all_fixtures() {
  std::vector<std::string> out = {"ex1.json", "ex2.json", "ex6.json", "exlc.json",
                                  "exlc.txt"};
  for (int i = 1; i <= 12; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "three_state/grid_%02d.txt", i);
    out.emplace_back(name);
  }
  return out;
}

FamilySpec load(const std::string& name) {
  return read_family_file(oracle::fixture_path(name));
}

}  // namespace

TEST_CASE("parse the lazy-cycle pattern grid") {
  const FamilySpec lc = load("exlc.txt");
  CHECK(lc.name == "exlc");
  CHECK(lc.graph.num_edges() == 8);
  CHECK(lc.lumping == LumpingMap({0, 0, 1, 1}));
  CHECK(lc.graph == Digraph(4, {{0, 3}, {1, 2}, {1, 3}, {2, 1}, {2, 2}, {3, 0}, {3, 1}, {3, 3}}));
}

TEST_CASE("edges form and pattern form describe the same family") {
  const FamilySpec pattern = load("exlc.json");
  std::string edges = emit_family_json(pattern, FamilyFormat::Edges);
  const FamilySpec back = parse_family(edges);
  CHECK(back == pattern);
  CHECK(load("exlc.txt") == pattern);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_family("lumping: 0 1\n+ +\n+\n"), ParseError);
  CHECK_THROWS_AS(parse_family("lumping: 0 1\n+ +\n"), ParseError);
  CHECK_THROWS_AS(parse_family("lumping: 0 1\n+ x\n+ +\n"), ParseError);
  CHECK_THROWS_AS(parse_family("+ +\n+ +\n"), ParseError);
  CHECK_THROWS_AS(parse_family("lumping: 0 z\n"), ParseError);
  CHECK_THROWS_AS(parse_family("{\"lumping\": [0, 1]}"), ParseError);
  CHECK_THROWS_AS(parse_family("{\"lumping\": [0, 1], \"edges\": [[0, 1]]}"), ParseError);
  CHECK_THROWS_AS(parse_family("{\"lumping\": [0, 1], \"num_states\": 2, "
                               "\"edges\": [[0, 1]], \"pattern\": [\"0 +\", \"+ 0\"]}"),
                  ParseError);
  CHECK_THROWS_AS(parse_family("{\"lumping\": [0, 1], \"num_states\": 2, "
                               "\"edges\": [[0, 5]]}"),
                  ParseError);
  CHECK_THROWS_AS(parse_family("{\"lumping\": [0, 1], \"colour\": 1, "
                               "\"pattern\": [\"0 +\", \"+ 0\"]}"),
                  ParseError);
  CHECK_THROWS_AS(parse_family("{\"lumping\": [0, 1"), ParseError);
  CHECK_THROWS_AS(parse_family("lumping: 0 2\n0 +\n+ 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(read_family_file("/nonexistent/family.json"), ParseError);
}

TEST_CASE("parse(emit(x)) == x for every fixture and format") {
  for (const std::string& name : all_fixtures()) {
    CAPTURE(name);
    const FamilySpec spec = load(name);
    CHECK(parse_family(emit_family_json(spec, FamilyFormat::Edges)) == spec);
    CHECK(parse_family(emit_family_json(spec, FamilyFormat::Pattern)) == spec);
    CHECK(parse_family(emit_family_text(spec)) == spec);
    CHECK(emit_family_text(spec) == emit_family_text(parse_family(emit_family_text(spec))));
  }
}

TEST_CASE("parse(emit(x)) == x for random families") {
  oracle::Rng rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    const auto fam = oracle::random_family(rng, 1, 6);
    const FamilySpec spec{std::nullopt, fam.graph, fam.lumping};
    REQUIRE(parse_family(emit_family_json(spec, FamilyFormat::Edges)) == spec);
    REQUIRE(parse_family(emit_family_json(spec, FamilyFormat::Pattern)) == spec);
    REQUIRE(parse_family(emit_family_text(spec)) == spec);
  }
}

TEST_CASE("labels and grids") {
  CHECK(class_label(0) == "a");
  CHECK(class_label(2) == "c");
  CHECK(class_label(26) == "x26");
  const FamilySpec ex1 = load("ex1.json");
  const std::vector<std::string> grid = {"+ | + + 0", "--|------", "+ | + + +",
                                         "+ | 0 + 0", "+ | 0 0 +"};
  CHECK(pattern_grid(ex1.graph, ex1.lumping) == grid);
}

TEST_CASE("report JSON round-trips, with and without a witness") {
  for (const std::string& name : all_fixtures()) {
    CAPTURE(name);
    const FamilySpec spec = load(name);
    Report r = build_report(spec);
    CHECK(report_from_json(nlohmann::json::parse(to_json(r).dump()), spec.graph) == r);
    r.witness = search_witness(spec.graph, spec.lumping);
    r.timing_ms = 1.25;
    const Report back = report_from_json(nlohmann::json::parse(to_json(r).dump()), spec.graph);
    CHECK(back == r);
    if (r.witness) CHECK(verify_witness(spec.graph, spec.lumping, *back.witness));
  }
}

TEST_CASE("reports are byte-deterministic") {
  const FamilySpec ex1 = load("ex1.json");
  Report a = build_report(ex1);
  Report b = build_report(ex1);
  a.witness = search_witness(ex1.graph, ex1.lumping);
  b.witness = search_witness(ex1.graph, ex1.lumping);
  CHECK(to_json(a).dump(2) == to_json(b).dump(2));
}

TEST_CASE("report JSON rejects a foreign schema version") {
  const FamilySpec ex1 = load("ex1.json");
  auto j = nlohmann::json::parse(to_json(build_report(ex1)).dump());
  j["schema_version"] = 99;
  CHECK_THROWS_AS(report_from_json(j, ex1.graph), ParseError);
  auto k = nlohmann::json::parse(to_json(build_report(ex1)).dump());
  k["rule"] = "Guess";
  CHECK_THROWS_AS(report_from_json(k, ex1.graph), ParseError);
}
