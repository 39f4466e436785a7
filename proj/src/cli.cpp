#include "lumpex/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <sstream>

#include "lumpex/census.hpp"
#include "lumpex/criteria.hpp"
#include "lumpex/dimension.hpp"
#include "lumpex/errors.hpp"
#include "lumpex/io.hpp"
#include "lumpex/witness.hpp"

namespace lumpex {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string block_text(const Block& b) {
  return "(" + class_label(b.from) + "," + class_label(b.to) + ")";
}

std::string blocks_text(const std::vector<Block>& blocks) {
  if (blocks.empty()) return "none";
  std::string out;
  for (const Block& b : blocks) out += (out.empty() ? "" : " ") + block_text(b);
  return out;
}

std::string classes_text(const std::vector<int>& classes) {
  std::string out = "{";
  for (std::size_t i = 0; i < classes.size(); ++i) {
    out += (i ? "," : "") + class_label(classes[i]);
  }
  return out + "}";
}

std::string certificate_text(const Verdict& v) {
  return std::visit(
      [](const auto& c) -> std::string {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, DegenerateCertificate>) {
          return "|X| = " + std::to_string(c.num_classes) + " with |Y| = " +
                 std::to_string(c.num_states);
        } else if constexpr (std::is_same_v<T, NoMultiRowCertificate>) {
          return "no multi-row merging block; merging blocks: " +
                 blocks_text(c.merging_blocks);
        } else if constexpr (std::is_same_v<T, LazyCycleCertificate>) {
          std::string cyc;
          for (int x : c.cycle) cyc += class_label(x) + " -> ";
          return "within-class edges are self-loops; lumped cycle " + cyc +
                 class_label(c.cycle.front());
        } else if constexpr (std::is_same_v<T, RedundancyCertificate>) {
          return "multi-row merging block " + block_text(c.block) +
                 " is redundant with T = " + classes_text(c.classes);
        } else if constexpr (std::is_same_v<T, SimplifiedInequality>) {
          return "sum |S_x| over D = " + std::to_string(c.lhs) + " > " +
                 std::to_string(c.rhs);
        } else {
          return "ehull_sum_dim " + std::to_string(c.ehull_sum_dim) +
                 (c.is_e_family ? " == " : " != ") + "target " +
                 std::to_string(c.target);
        }
      },
      v.certificate);
}

void print_family(std::ostream& out, const FamilySpec& spec) {
  out << "family " << spec.name.value_or("(unnamed)") << ": "
      << spec.graph.num_vertices() << " states, " << spec.lumping.num_classes()
      << " classes, " << spec.graph.num_edges() << " edges\n";
  for (const std::string& row : pattern_grid(spec.graph, spec.lumping)) {
    out << "  " << row << "\n";
  }
}

void print_dimensions(std::ostream& out, const DimensionReport& d) {
  out << "dimensions   manifold " << d.manifold_dim << "  span " << d.span_dim
      << "  n " << d.n_dim << "  ehull_sum " << d.ehull_sum_dim << "  target "
      << d.target << "\n";
}

void print_matrix(std::ostream& out, const EdgeFunction& f) {
  for (int i = 0; i < f.size(); ++i) {
    out << "  ";
    for (int j = 0; j < f.size(); ++j) {
      out << (j ? " " : "") << std::setw(10) << std::fixed << std::setprecision(6)
          << f(i, j);
    }
    out << "\n";
  }
  out.unsetf(std::ios::floatfield);
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("LUMPEX_SEED")) {
    try {
      std::size_t used = 0;
      const std::uint64_t s = std::stoull(env, &used);
      if (used == std::string(env).size()) return s;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument(std::string("LUMPEX_SEED is not an integer: ") + env);
  }
  return kDefaultWitnessSeed;
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size() || v <= 0) {
      throw std::invalid_argument("--sizes expects positive integers like 1,2");
    }
    sizes.push_back(v);
  }
  if (sizes.empty()) throw std::invalid_argument("--sizes is empty");
  return sizes;
}

struct Options {
  std::string file;
  std::string file_big;
  bool json = false;
  bool timing = false;
  std::uint64_t budget = std::uint64_t{1} << 16;
  int witness_budget = 500;
  std::optional<std::uint64_t> seed;
  double tol = 1e-6;
  bool with_witness = false;
  int states = 0;
  std::string sizes;
  int threads = 1;
};

int cmd_check(const Options& o, std::ostream& out) {
  const auto start = Clock::now();
  const FamilySpec spec = read_family_file(o.file);
  Report r = build_report(spec, DecideConfig{o.budget});
  if (o.with_witness && r.verdict.decision == Decision::NotEFamily) {
    r.witness = search_witness(spec.graph, spec.lumping,
                               {o.witness_budget, o.tol, resolve_seed(o.seed)});
  }
  if (o.timing) r.timing_ms = elapsed_ms(start);
  if (o.json) {
    out << to_json(r).dump(2) << "\n";
    return kExitOk;
  }
  print_family(out, spec);
  out << "verdict      " << to_string(r.verdict.decision) << "\n";
  out << "rule         " << to_string(r.verdict.rule) << "\n";
  out << "certificate  " << certificate_text(r.verdict) << "\n";
  print_dimensions(out, r.dimensions);
  out << "blocks       |D| " << r.profile.num_blocks << "  |U| " << r.profile.num_u
      << "  |R| " << r.profile.num_r << "\n";
  out << "merging      " << blocks_text(r.profile.merging_blocks) << "\n";
  out << "multi-row    " << blocks_text(r.profile.multi_row_merging_blocks) << "\n";
  if (o.with_witness) {
    if (r.witness) {
      out << "witness      t = " << r.witness->t << ", violation = "
          << r.witness->violation << "\n";
    } else {
      out << "witness      none found\n";
    }
  }
  if (r.timing_ms) out << "time         " << *r.timing_ms << " ms\n";
  return kExitOk;
}

int cmd_dims(const Options& o, std::ostream& out) {
  const FamilySpec spec = read_family_file(o.file);
  const DimensionReport d = dimensional_criterion(spec.graph, spec.lumping);
  if (o.json) {
    out << to_json(d).dump(2) << "\n";
    return kExitOk;
  }
  print_family(out, spec);
  print_dimensions(out, d);
  out << "e-family     " << (d.is_e_family ? "yes" : "no") << "\n";
  return kExitOk;
}

int cmd_basis(const Options& o, std::ostream& out) {
  const FamilySpec spec = read_family_file(o.file);
  const auto cone = cone_basis(spec.graph, spec.lumping);
  const auto nb = n_basis(spec.graph);
  auto rows = [](const std::vector<IntVector>& vs) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const IntVector& v : vs) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (const mpz_class& x : v) row.push_back(x.get_si());
      j.push_back(std::move(row));
    }
    return j;
  };
  if (o.json) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (const Edge& e : spec.graph.edges()) edges.push_back({e.from, e.to});
    j["edges"] = std::move(edges);
    j["cone_basis"] = rows(cone);
    j["n_basis"] = rows(nb);
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  print_family(out, spec);
  out << "edges       ";
  for (const Edge& e : spec.graph.edges()) out << " " << e.from << e.to;
  out << "\n";
  auto print = [&](const char* label, const std::vector<IntVector>& vs) {
    out << label << " (" << vs.size() << " vectors, rank " << rank(vs) << ")\n";
    for (const IntVector& v : vs) {
      out << "            ";
      for (const mpz_class& x : v) out << std::setw(3) << x.get_str();
      out << "\n";
    }
  };
  print("cone basis", cone);
  print("N basis", nb);
  return kExitOk;
}

int cmd_witness(const Options& o, std::ostream& out) {
  const auto start = Clock::now();
  const FamilySpec spec = read_family_file(o.file);
  const WitnessSearchOptions opts{o.witness_budget, o.tol, resolve_seed(o.seed)};
  const auto w = search_witness(spec.graph, spec.lumping, opts);
  const double ms = elapsed_ms(start);
  if (o.json) {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    if (spec.name) j["name"] = *spec.name;
    j["seed"] = opts.seed;
    j["tol"] = opts.tol;
    j["found"] = w.has_value();
    if (w) {
      j["verified"] = verify_witness(spec.graph, spec.lumping, *w, opts.tol);
      j["witness"] = to_json(*w);
    }
    if (o.timing) j["timing_ms"] = ms;
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  print_family(out, spec);
  if (!w) {
    out << "none found (seed " << opts.seed << ", " << opts.budget
        << " random pairs); this does not prove an e-family\n";
  } else {
    out << "witness found: t = " << w->t << ", violation = " << w->violation
        << ", verified = "
        << (verify_witness(spec.graph, spec.lumping, *w, opts.tol) ? "yes" : "no")
        << "\nP0\n";
    print_matrix(out, w->p0.function());
    out << "P1\n";
    print_matrix(out, w->p1.function());
  }
  if (o.timing) out << "time " << ms << " ms\n";
  return kExitOk;
}

int cmd_census(const Options& o, std::ostream& out) {
  const auto start = Clock::now();
  const std::vector<int> sizes = parse_sizes(o.sizes);
  const auto classes = enumerate_families(o.states, sizes, o.threads);
  int e_families = 0;
  for (const FamilyClass& c : classes) {
    e_families += c.verdict.decision == Decision::EFamily ? 1 : 0;
  }
  const double ms = elapsed_ms(start);
  if (o.json) {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["states"] = o.states;
    std::vector<int> sorted = sizes;
    std::sort(sorted.begin(), sorted.end());
    j["sizes"] = sorted;
    j["num_classes"] = classes.size();
    j["num_e_families"] = e_families;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const FamilyClass& c : classes) list.push_back(to_json(c));
    j["classes"] = std::move(list);
    if (o.timing) j["timing_ms"] = ms;
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << std::left << std::setw(4) << "#" << std::setw(6) << "size" << std::setw(12)
      << "verdict" << std::setw(24) << "rule"
      << "pattern\n";
  int i = 0;
  for (const FamilyClass& c : classes) {
    std::string rows;
    for (const std::string& r : pattern_grid(c.graph, c.lumping)) {
      if (r.find('-') != std::string::npos) continue;
      std::string compact;
      for (char ch : r) {
        if (ch == '+' || ch == '0') compact += ch;
      }
      rows += (rows.empty() ? "" : "/") + compact;
    }
    out << std::setw(4) << ++i << std::setw(6) << c.class_size << std::setw(12)
        << to_string(c.verdict.decision) << std::setw(24) << to_string(c.verdict.rule)
        << rows << "\n";
  }
  out << std::right;
  out << "classes " << classes.size() << "  e-families " << e_families << "\n";
  if (o.timing) out << "time " << ms << " ms\n";
  return kExitOk;
}

int cmd_chain(const Options& o, std::ostream& out) {
  const FamilySpec small = read_family_file(o.file);
  const FamilySpec big = read_family_file(o.file_big);
  if (!(small.lumping == big.lumping)) {
    throw std::invalid_argument("the two families use different lumpings");
  }
  const auto steps = chain(small.graph, big.graph, small.lumping);
  const LumpingMap& k = small.lumping;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  std::ostringstream text;
  for (std::size_t s = 1; s < steps.size(); ++s) {
    std::vector<Edge> added;
    std::set_difference(steps[s].edges().begin(), steps[s].edges().end(),
                        steps[s - 1].edges().begin(), steps[s - 1].edges().end(),
                        std::back_inserter(added));
    const bool block_link = added.size() > 1 ||
                            !lumped_graph(steps[s - 1], k).lumped_graph.has_edge(
                                k(added.front().from), k(added.front().to));
    nlohmann::ordered_json step;
    step["kind"] = block_link ? "block-link" : "edge-link";
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    text << std::setw(4) << s << "  " << (block_link ? "block-link" : "edge-link ");
    if (block_link) {
      text << " " << block_text({k(added.front().from), k(added.front().to)});
    }
    for (const Edge& e : added) {
      edges.push_back({e.from, e.to});
      text << " (" << e.from << "," << e.to << ")";
    }
    text << "\n";
    step["edges"] = std::move(edges);
    list.push_back(std::move(step));
  }
  if (o.json) {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["length"] = steps.size() - 1;
    j["steps"] = std::move(list);
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << "chain length " << steps.size() - 1 << "\n" << text.str();
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decide whether a family of lumpable Markov chains is an exponential family"};
  app.name("lumpex");
  app.require_subcommand(1);
  Options o;
  std::optional<std::uint64_t> seed;

  auto* check = app.add_subcommand("check", "layered verdict with certificate");
  check->add_option("FILE", o.file, "family file (JSON or pattern text)")->required();
  check->add_option("--budget", o.budget, "redundancy subsets examined per block");
  check->add_flag("--json", o.json, "machine-readable report");
  check->add_flag("--witness", o.with_witness, "attach a numerical witness when not an e-family");
  check->add_option("--seed", seed, "witness seed (overrides LUMPEX_SEED)");
  check->add_flag("--timing", o.timing, "include wall-clock time");

  auto* dims = app.add_subcommand("dims", "dimension report");
  dims->add_option("FILE", o.file)->required();
  dims->add_flag("--json", o.json);

  auto* basis = app.add_subcommand("basis", "cone and N bases as integer vectors");
  basis->add_option("FILE", o.file)->required();
  basis->add_flag("--json", o.json);

  auto* witness = app.add_subcommand("witness", "search for an e-geodesic witness");
  witness->add_option("FILE", o.file)->required();
  witness->add_option("--seed", seed, "random seed (overrides LUMPEX_SEED)");
  witness->add_option("--tol", o.tol, "violation threshold")->check(CLI::PositiveNumber);
  witness->add_option("--budget", o.witness_budget, "random pairs to try")
      ->check(CLI::NonNegativeNumber);
  witness->add_flag("--json", o.json);
  witness->add_flag("--timing", o.timing);

  auto* census = app.add_subcommand("census", "classify all families up to relabeling");
  census->add_option("--states", o.states, "number of states")->required();
  census->add_option("--sizes", o.sizes, "class sizes, e.g. 1,2")->required();
  census->add_option("--threads", o.threads)->check(CLI::PositiveNumber);
  census->add_flag("--json", o.json);
  census->add_flag("--timing", o.timing);

  auto* chain_cmd = app.add_subcommand("chain", "edge-link/block-link chain");
  chain_cmd->add_option("FILE_SMALL", o.file)->required();
  chain_cmd->add_option("FILE_BIG", o.file_big)->required();
  chain_cmd->add_flag("--json", o.json);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }
  o.seed = seed;

  try {
    if (check->parsed()) return cmd_check(o, out);
    if (dims->parsed()) return cmd_dims(o, out);
    if (basis->parsed()) return cmd_basis(o, out);
    if (witness->parsed()) return cmd_witness(o, out);
    if (census->parsed()) return cmd_census(o, out);
    if (chain_cmd->parsed()) return cmd_chain(o, out);
  } catch (const VacuousFamilyError& e) {
    err << "error: " << e.what() << "\n";
    return kExitVacuous;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace lumpex
