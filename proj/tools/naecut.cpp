// naecut: command-line front end for the NAE-3SAT / triangle-free cut pipeline.
//
// Exit codes: 0 yes/success, 1 no/unsat/invalid certificate, 2 usage or
// format error, 3 search budget exceeded.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "naecut/naecut.hpp"

namespace {

using namespace naecut;

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_output(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
}

// Writes to `path` when given, otherwise to stdout.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  write_output(path, text);
}

// Witness to `path` or stdout; the `s` line always reaches stdout.
void emit_witness(const std::string& path, const std::string& text) {
  emit(path, text);
  if (!path.empty()) std::cout << text.substr(0, text.find('\n') + 1);
}

std::uint64_t colouring_budget() {
  if (std::getenv("NAE_REDUCE_BUDGET")) return SearchBudget::from_env().max_states;
  return kDefaultColouringNodes;
}

// ---------------------------------------------------------------------------

struct TransformArgs {
  std::string input, output, map;
};

int run_transform(const TransformArgs& args) {
  const auto f = parse_cnf(read_input(args.input));
  const auto res = split_repeated_variables(f);
  const auto text = emit_cnf(res.formula, transform_map_lines(res.map));
  if (!args.map.empty()) write_output(args.map, emit_transform_map(res.map));
  emit(args.output, text);
  return kYes;
}

struct ReduceArgs {
  std::string input, output, map;
  bool skip_transform = false;
};

int run_reduce(const ReduceArgs& args) {
  const auto f = parse_cnf(read_input(args.input));
  CnfFormula split;
  if (args.skip_transform) {
    split = f;
  } else {
    if (!is_monotone_3sat(f)) throw PreconditionError("input is not monotone 3-CNF; use --skip-transform for split formulas");
    split = split_repeated_variables(f).formula;
  }
  const auto red = build_graph(split);
  const auto colouring = construct_5_colouring(red.graph, red.map);
  if (!args.output.empty()) write_output(args.output, emit_graph(red.graph));
  if (!args.map.empty()) write_output(args.map, emit_reduction_map(red.map));

  std::cout << "vertices " << red.graph.num_vertices() << '\n'
            << "edges " << red.graph.num_edges() << '\n'
            << "triangles " << enumerate_triangles(red.graph).size() << '\n'
            << "gadgets " << red.map.clause_gadgets.size() << '\n'
            << "max degree " << max_degree(red.graph) << '\n'
            << "colours " << colouring.k << '\n';
  if (split.num_clauses() == 0) {
    if (red.graph.num_vertices() >= 2)
      std::cout << "c degenerate: no clauses, every split of the " << red.graph.num_vertices()
                << " isolated vertices is a triangle-free cut\n";
    else
      std::cout << "c degenerate: fewer than two vertices, no cut exists\n";
  }
  return kYes;
}

struct SolveArgs {
  std::string input, output;
};

int run_solve_nae(const SolveArgs& args) {
  const auto f = parse_cnf(read_input(args.input));
  const auto a = solve_nae(f, SearchBudget::from_env());
  emit_witness(args.output, emit_nae_witness(a));
  return a ? kYes : kNo;
}

int run_solve_cut(const SolveArgs& args) {
  const auto g = parse_graph(read_input(args.input));
  const auto cut = solve_cut(g, SearchBudget::from_env());
  emit_witness(args.output, emit_cut_witness(cut));
  return cut ? kYes : kNo;
}

struct ColourArgs {
  std::string input, output;
  int k = 5;
};

int run_colour(const ColourArgs& args) {
  const auto g = parse_graph(read_input(args.input));
  const auto c = find_k_colouring(g, args.k, colouring_budget());
  if (!c) {
    std::cout << "s NO-COLOURING\n";
    return kNo;
  }
  emit(args.output, emit_colouring(*c));
  return kYes;
}

int run_triangles(const std::string& input) {
  const auto g = parse_graph(read_input(input));
  const auto tris = enumerate_triangles(g);
  std::cout << "c triangles " << tris.size() << '\n';
  for (const auto& t : tris) std::cout << "t " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  return kYes;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string kind, object, certificate, map;
};

int verify_assignment(const VerifyArgs& args) {
  const auto f = parse_cnf(read_input(args.object));
  const auto a = parse_nae_witness(read_input(args.certificate), f.num_vars());
  if (!a) {
    std::cout << "c certificate claims unsatisfiable; there is no witness to check\n";
    return kNo;
  }
  for (std::size_t i = 0; i < f.num_clauses(); ++i) {
    if (clause_nae_satisfied(f.clause(i), *a)) continue;
    std::cout << "c clause " << (i + 1) << " has all-equal literals:";
    for (const auto& l : f.clause(i)) std::cout << ' ' << l.to_dimacs();
    std::cout << "\ns INVALID\n";
    return kNo;
  }
  if (!args.map.empty()) {
    const auto m = parse_transform_map(read_input(args.map));
    try {
      const auto original = project_assignment(m, *a);
      std::cout << "c projected onto " << m.original_vars << " original variables\n"
                << emit_nae_witness(original).substr(std::string("s NAE-SATISFIABLE\n").size());
    } catch (const WitnessError& e) {
      std::cout << "c " << e.what() << "\ns INVALID\n";
      return kNo;
    }
  }
  std::cout << "s VALID\n";
  return kYes;
}

int verify_cut(const VerifyArgs& args) {
  const auto g = parse_graph(read_input(args.object));
  const auto cut = parse_cut_witness(read_input(args.certificate), g.num_vertices());
  if (!cut) {
    std::cout << "c certificate claims no cut; there is no witness to check\n";
    return kNo;
  }
  if (cut->side_a.empty() || cut->side_b.empty()) {
    std::cout << "c one side of the cut is empty\ns INVALID\n";
    return kNo;
  }
  if (auto t = find_monochromatic_triangle(g, *cut)) {
    std::cout << "c monochromatic triangle " << (*t)[0] << ' ' << (*t)[1] << ' ' << (*t)[2] << "\ns INVALID\n";
    return kNo;
  }
  if (!args.map.empty()) {
    const auto rm = parse_reduction_map(read_input(args.map));
    const auto problems = check_map_against_graph(g, rm);
    for (const auto& p : problems) std::cout << "c map: " << p << '\n';
    if (!problems.empty()) {
      std::cout << "s INVALID\n";
      return kNo;
    }
    std::vector<bool> in_a(static_cast<std::size_t>(g.num_vertices()), false);
    for (Vertex v : cut->side_a) in_a[v - 1] = true;
    for (const auto& [id, gad] : rm.clause_gadgets) {
      if (in_a[gad.x - 1] != in_a[gad.y - 1]) {
        std::cout << "c gadget of clause " << id << " separates its endpoints\ns INVALID\n";
        return kNo;
      }
    }
    Assignment a = Assignment::all_false(rm.num_vars());
    for (Var v = 1; v <= rm.num_vars(); ++v) a.set(v, in_a[rm.var_vertex[v - 1] - 1]);
    std::cout << "c induced assignment on " << rm.num_vars() << " variables\n"
              << emit_nae_witness(a).substr(std::string("s NAE-SATISFIABLE\n").size());
  }
  std::cout << "s VALID\n";
  return kYes;
}

int verify_colouring_cmd(const VerifyArgs& args) {
  const auto g = parse_graph(read_input(args.object));
  const auto c = parse_colouring(read_input(args.certificate), g.num_vertices());
  for (int col : c.colours)
    if (col > c.k) {
      std::cout << "c colour " << col << " exceeds k = " << c.k << "\ns INVALID\n";
      return kNo;
    }
  for (auto [u, v] : g.edges())
    if (c.of(u) == c.of(v)) {
      std::cout << "c edge " << u << ' ' << v << " has both ends coloured " << c.of(u) << "\ns INVALID\n";
      return kNo;
    }
  if (!args.map.empty()) {
    const auto rm = parse_reduction_map(read_input(args.map));
    const auto problems = check_map_against_graph(g, rm);
    for (const auto& p : problems) std::cout << "c map: " << p << '\n';
    if (!problems.empty() || c.k > 5) {
      if (c.k > 5) std::cout << "c reduced graphs need at most 5 colours, certificate uses k = " << c.k << '\n';
      std::cout << "s INVALID\n";
      return kNo;
    }
  }
  std::cout << "s VALID\n";
  return kYes;
}

int run_verify(const VerifyArgs& args) {
  if (args.kind == "assignment") return verify_assignment(args);
  if (args.kind == "cut") return verify_cut(args);
  return verify_colouring_cmd(args);
}

// ---------------------------------------------------------------------------

struct RoundtripArgs {
  std::uint64_t seed = 1;
  int n = 6;
  int m = 6;
  int trials = 100;
  bool break_gadget = false;
  bool distinct_pairs = false;
};

int run_roundtrip(const RoundtripArgs& args) {
  RoundtripOptions options;
  options.budget = SearchBudget::from_env();
  options.build.break_gadget = args.break_gadget;

  struct Row {
    const char* name;
    bool InstanceReport::*field;
    int pass = 0;
  };
  std::vector<Row> rows = {
      {"transform properties", &InstanceReport::properties_hold},
      {"lift/project identity", &InstanceReport::lift_project_identity},
      {"formula <=> split formula", &InstanceReport::transform_agrees},
      {"formula <=> triangle-free cut", &InstanceReport::cut_agrees},
      {"assignment -> cut certificate", &InstanceReport::forward_certificate},
      {"cut -> assignment certificate", &InstanceReport::backward_certificate},
      {"formula <=> extracted formula", &InstanceReport::extraction_agrees},
      {"extracted witness -> cut", &InstanceReport::extraction_certificate},
      {"5-colouring proper", &InstanceReport::colouring_proper},
      {"triangles classified", &InstanceReport::triangles_classified},
      {"gadget internals in 5 triangles", &InstanceReport::internal_in_five},
  };
  int sat = 0, failures = 0, worst_degree = 0, worst_colours = 0, worst_occ = 0, bounds_ok = 0;
  for (int t = 0; t < args.trials; ++t) {
    const auto f = generate_instance(args.seed + static_cast<std::uint64_t>(t), args.n, args.m, args.distinct_pairs);
    const auto r = check_instance(f, options);
    sat += r.satisfiable;
    for (auto& row : rows) row.pass += (r.*(row.field)) ? 1 : 0;
    worst_degree = std::max(worst_degree, r.max_degree);
    worst_colours = std::max(worst_colours, r.colours);
    worst_occ = std::max(worst_occ, r.max_extracted_occurrences);
    const bool bounds = r.max_degree <= 8 && r.colours <= 5 && r.max_extracted_occurrences <= 7 &&
                        r.max_variable_triangles <= 7;
    bounds_ok += bounds;
    if (!r.ok()) {
      ++failures;
      std::cout << "c FAIL trial " << t << " seed " << (args.seed + static_cast<std::uint64_t>(t)) << '\n';
    }
  }
  std::cout << "trials " << args.trials << "  n " << args.n << "  m " << args.m << "  satisfiable " << sat
            << "  unsatisfiable " << (args.trials - sat) << '\n';
  if (args.trials > 0) {
    std::cout << std::left << std::setw(34) << "check" << std::right << std::setw(6) << "pass" << std::setw(6)
              << "fail" << '\n';
    for (const auto& row : rows)
      std::cout << std::left << std::setw(34) << row.name << std::right << std::setw(6) << row.pass << std::setw(6)
                << (args.trials - row.pass) << '\n';
    std::cout << std::left << std::setw(34) << "degree/colour/occurrence bounds" << std::right << std::setw(6)
              << bounds_ok << std::setw(6) << (args.trials - bounds_ok) << '\n';
    std::cout << "max degree " << worst_degree << "  max colours " << worst_colours << "  max occurrences "
              << worst_occ << '\n';
  }
  std::cout << (failures == 0 ? "s ALL-PASS\n" : "s FAILURES\n");
  return failures == 0 ? kYes : kNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NAE-3SAT to triangle-free cut reduction toolkit"};
  app.require_subcommand(1);

  TransformArgs transform_args;
  auto* transform = app.add_subcommand("transform", "split repeated variables of a monotone 3-CNF");
  transform->add_option("cnf", transform_args.input, "input DIMACS CNF ('-' for stdin)")->required();
  transform->add_option("-o,--output", transform_args.output, "write the transformed CNF here");
  transform->add_option("--map", transform_args.map, "write the variable map here");

  ReduceArgs reduce_args;
  auto* reduce = app.add_subcommand("reduce", "build the triangle-free cut instance");
  reduce->add_option("cnf", reduce_args.input, "input DIMACS CNF")->required();
  reduce->add_option("-o,--output", reduce_args.output, "write the graph here");
  reduce->add_option("--map", reduce_args.map, "write the reduction map here");
  reduce->add_flag("--skip-transform", reduce_args.skip_transform, "input is already split");

  SolveArgs nae_args;
  auto* solve_nae_cmd = app.add_subcommand("solve-nae", "exact NAE satisfiability");
  solve_nae_cmd->add_option("cnf", nae_args.input, "input DIMACS CNF")->required();
  solve_nae_cmd->add_option("-o,--output", nae_args.output, "write the witness here");

  SolveArgs cut_args;
  auto* solve_cut_cmd = app.add_subcommand("solve-cut", "exact triangle-free cut");
  solve_cut_cmd->add_option("graph", cut_args.input, "input graph")->required();
  solve_cut_cmd->add_option("-o,--output", cut_args.output, "write the witness here");

  ColourArgs colour_args;
  auto* colour = app.add_subcommand("color", "exact k-colouring");
  colour->alias("colour");
  colour->add_option("graph", colour_args.input, "input graph")->required();
  colour->add_option("-k", colour_args.k, "number of colours")->required()->check(CLI::PositiveNumber);
  colour->add_option("-o,--output", colour_args.output, "write the certificate here");

  std::string triangles_input;
  auto* triangles = app.add_subcommand("triangles", "list all triangles");
  triangles->add_option("graph", triangles_input, "input graph")->required();

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "check a certificate");
  verify->add_option("kind", verify_args.kind, "assignment | cut | coloring")
      ->required()
      ->check(CLI::IsMember({"assignment", "cut", "coloring", "colouring"}));
  verify->add_option("object", verify_args.object, "CNF (assignment) or graph (cut, coloring)")->required();
  verify->add_option("certificate", verify_args.certificate, "witness or certificate file")->required();
  verify->add_option("--map", verify_args.map, "variable map (assignment) or reduction map (cut, coloring)");

  RoundtripArgs rt_args;
  auto* roundtrip = app.add_subcommand("roundtrip", "random end-to-end equivalence sweep");
  roundtrip->add_option("--seed", rt_args.seed, "first seed")->required();
  roundtrip->add_option("-n", rt_args.n, "variables per instance")->required()->check(CLI::Range(3, 1 << 20));
  roundtrip->add_option("-m", rt_args.m, "clauses per instance")->required()->check(CLI::NonNegativeNumber);
  roundtrip->add_option("--trials", rt_args.trials, "number of instances")->check(CLI::NonNegativeNumber);
  roundtrip->add_flag("--distinct-pairs", rt_args.distinct_pairs, "no variable pair shared by two clauses");
  roundtrip->add_flag("--break-gadget", rt_args.break_gadget, "drop gadget edge ab (mutation test)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*transform) return run_transform(transform_args);
    if (*reduce) return run_reduce(reduce_args);
    if (*solve_nae_cmd) return run_solve_nae(nae_args);
    if (*solve_cut_cmd) return run_solve_cut(cut_args);
    if (*colour) return run_colour(colour_args);
    if (*triangles) return run_triangles(triangles_input);
    if (*verify) return run_verify(verify_args);
    if (*roundtrip) return run_roundtrip(rt_args);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    std::cout << "s UNKNOWN\n";
    return kBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
