#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "naecut/colouring.hpp"
#include "naecut/detail/text.hpp"
#include "naecut/error.hpp"
#include "naecut/formula.hpp"
#include "naecut/graph.hpp"
#include "naecut/nae_search.hpp"

namespace naecut {

// Caps the work of every exact solver: enumerated candidates for the
// brute-force oracles, branching decisions for the propagating search.
struct SearchBudget {
  std::uint64_t max_states = std::uint64_t{1} << 24;

  // NAE_REDUCE_BUDGET overrides the default; anything but a positive integer is an error.
  static SearchBudget from_env() {
    SearchBudget b;
    if (const char* s = std::getenv("NAE_REDUCE_BUDGET")) {
      char* end = nullptr;
      const auto v = std::strtoull(s, &end, 10);
      if (end == s || *end != '\0' || v == 0 || *s == '-')
        throw PreconditionError(std::string("NAE_REDUCE_BUDGET must be a positive integer, got '") + s + "'");
      b.max_states = v;
    }
    return b;
  }
};

namespace detail {

inline bool fits_budget(int bits, const SearchBudget& budget) {
  if (bits < 0) return true;
  if (bits >= 63) return false;
  return (std::uint64_t{1} << bits) <= budget.max_states;
}

inline std::vector<std::vector<int>> nae_constraints(const CnfFormula& f) {
  std::vector<std::vector<int>> out;
  out.reserve(f.num_clauses());
  for (const auto& c : f.clauses()) {
    std::vector<int> lits;
    for (const auto& l : c) lits.push_back(l.to_dimacs());
    out.push_back(std::move(lits));
  }
  return out;
}

inline std::vector<std::vector<int>> triangle_constraints(const Graph& g) {
  std::vector<std::vector<int>> out;
  for (const auto& t : enumerate_triangles(g)) out.push_back({t[0], t[1], t[2]});
  return out;
}

// bits[v-1] == true means side A. Vertex 1 stays on side B; if everything is on
// side B (only possible when g has no triangle), vertex n moves to side A.
inline std::optional<Cut> cut_from_bits(std::vector<bool> bits) {
  if (bits.size() < 2) return std::nullopt;
  if (std::none_of(bits.begin(), bits.end(), [](bool b) { return b; })) bits.back() = true;
  return Cut::from_membership(bits);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Enumeration oracles

// Lexicographically smallest NAE-satisfying assignment by plain enumeration
// (variable 1 most significant, false < true). Requires 2^num_vars <= budget.
inline std::optional<Assignment> brute_force_nae(const CnfFormula& f,
                                                 const SearchBudget& budget = SearchBudget{}) {
  const int n = f.num_vars();
  if (!detail::fits_budget(n, budget))
    throw BudgetExceeded("2^" + std::to_string(n) + " assignments exceed the budget of " +
                         std::to_string(budget.max_states));
  Assignment a = Assignment::all_false(n);
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (int v = 1; v <= n; ++v) a.set(v, (mask >> (n - v)) & 1u);
    if (nae_satisfies(f, a)) return a;
  }
  return std::nullopt;
}

// Smallest triangle-free cut by plain enumeration: bit = 1 puts the vertex on
// side A, vertex 1 is pinned to side B, vertex 1 is the most significant bit.
// Requires 2^(n-1) <= budget. None for n <= 1.
inline std::optional<Cut> brute_force_cut(const Graph& g, const SearchBudget& budget = SearchBudget{}) {
  const int n = g.num_vertices();
  if (n <= 1) return std::nullopt;
  if (!detail::fits_budget(n - 1, budget))
    throw BudgetExceeded("2^" + std::to_string(n - 1) + " cuts exceed the budget of " +
                         std::to_string(budget.max_states));
  const auto triangles = enumerate_triangles(g);
  const std::uint64_t total = std::uint64_t{1} << (n - 1);
  std::vector<bool> in_a(static_cast<std::size_t>(n), false);
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    for (int v = 2; v <= n; ++v) in_a[v - 1] = (mask >> (n - v)) & 1u;
    const bool ok = std::none_of(triangles.begin(), triangles.end(), [&](const Triangle& t) {
      return in_a[t[0] - 1] == in_a[t[1] - 1] && in_a[t[1] - 1] == in_a[t[2] - 1];
    });
    if (ok) return Cut::from_membership(in_a);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Propagating exact search. Same witnesses as the enumeration oracles, for
// instances far beyond their reach.

inline std::optional<Assignment> search_nae(const CnfFormula& f, const SearchBudget& budget = SearchBudget{}) {
  NaeSearch s(f.num_vars(), detail::nae_constraints(f), budget.max_states);
  auto bits = s.lex_smallest();
  if (!bits) return std::nullopt;
  Assignment a(std::move(*bits));
  if (!nae_satisfies(f, a)) throw std::logic_error("search returned an invalid NAE witness");
  return a;
}

inline std::optional<Cut> search_cut(const Graph& g, const SearchBudget& budget = SearchBudget{}) {
  if (g.num_vertices() <= 1) return std::nullopt;
  NaeSearch s(g.num_vertices(), detail::triangle_constraints(g), budget.max_states);
  auto bits = s.lex_smallest();
  if (!bits) return std::nullopt;
  auto cut = detail::cut_from_bits(std::move(*bits));
  if (!cut || !verify_cut_triangle_free(g, *cut)) throw std::logic_error("search returned an invalid cut");
  return cut;
}

// Enumeration when it fits the budget, propagating search otherwise.
inline std::optional<Assignment> solve_nae(const CnfFormula& f, const SearchBudget& budget = SearchBudget{}) {
  if (detail::fits_budget(f.num_vars(), budget)) return brute_force_nae(f, budget);
  return search_nae(f, budget);
}

inline std::optional<Cut> solve_cut(const Graph& g, const SearchBudget& budget = SearchBudget{}) {
  if (detail::fits_budget(g.num_vertices() - 1, budget)) return brute_force_cut(g, budget);
  return search_cut(g, budget);
}

// ---------------------------------------------------------------------------
// Four colours make both problems easy: colour classes {1,2} versus {3,4}.

inline Assignment assignment_from_4colouring(const CnfFormula& f, const Colouring& c) {
  if (!is_monotone_3sat(f)) throw PreconditionError("formula is not monotone 3-CNF");
  if (c.k > 4) throw PreconditionError("colouring uses more than 4 colours");
  const auto inc = incidence_graph(f, IncidenceVariant::kCoOccurrence);
  if (!verify_colouring(inc.graph, c)) throw PreconditionError("colouring is not proper on G(f)");
  Assignment a = Assignment::all_false(f.num_vars());
  for (Var v = 1; v <= f.num_vars(); ++v) a.set(v, c.of(v) <= 2);
  return a;
}

inline Cut cut_from_4colouring(const Graph& g, const Colouring& c) {
  if (c.k > 4) throw PreconditionError("colouring uses more than 4 colours");
  if (!verify_colouring(g, c)) throw PreconditionError("colouring is not proper");
  if (g.num_vertices() < 2) throw PreconditionError("a cut needs at least two vertices");
  std::vector<bool> in_a(static_cast<std::size_t>(g.num_vertices()));
  for (Vertex v = 1; v <= g.num_vertices(); ++v) in_a[v - 1] = c.of(v) <= 2;
  // One vertex alone on a side forms no triangle, so moving one across is safe.
  const auto on_a = std::count(in_a.begin(), in_a.end(), true);
  if (on_a == 0) in_a.back() = true;
  if (on_a == static_cast<long>(in_a.size())) in_a.back() = false;
  return Cut::from_membership(in_a);
}

// ---------------------------------------------------------------------------
// Witness files

inline std::string emit_nae_witness(const std::optional<Assignment>& a) {
  if (!a) return "s NAE-UNSATISFIABLE\n";
  std::ostringstream out;
  out << "s NAE-SATISFIABLE\nv";
  for (Var v = 1; v <= a->size(); ++v) out << ' ' << ((*a)[v] ? v : -v);
  out << " 0\n";
  return out.str();
}

// Variables missing from the v lines default to false.
inline std::optional<Assignment> parse_nae_witness(std::string_view text, int num_vars) {
  std::optional<bool> sat;
  Assignment a = Assignment::all_false(num_vars);
  std::vector<bool> seen(static_cast<std::size_t>(num_vars), false);
  bool terminated = false;
  auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    auto toks = detail::split_ws(lines[i]);
    if (toks.empty() || toks[0] == "c") continue;
    if (toks[0] == "s") {
      if (sat || toks.size() != 2) throw ParseError(line_no, "malformed status line");
      if (toks[1] == "NAE-SATISFIABLE") sat = true;
      else if (toks[1] == "NAE-UNSATISFIABLE") sat = false;
      else throw ParseError(line_no, "unknown status '" + std::string(toks[1]) + "'");
      continue;
    }
    if (toks[0] != "v") throw ParseError(line_no, "unexpected line");
    if (terminated) throw ParseError(line_no, "values after terminating 0");
    for (std::size_t k = 1; k < toks.size(); ++k) {
      auto lit = detail::to_int(toks[k], line_no);
      if (lit == 0) {
        terminated = true;
        continue;
      }
      if (terminated) throw ParseError(line_no, "values after terminating 0");
      const auto v = std::llabs(lit);
      if (v > num_vars) throw ParseError(line_no, "variable out of range");
      if (seen[v - 1]) throw ParseError(line_no, "variable listed twice");
      seen[v - 1] = true;
      a.set(static_cast<Var>(v), lit > 0);
    }
  }
  if (!sat) throw ParseError("missing status line");
  if (!*sat) return std::nullopt;
  return a;
}

inline std::string emit_cut_witness(const std::optional<Cut>& cut) {
  if (!cut) return "s NO-CUT\n";
  std::ostringstream out;
  out << "s CUT-FOUND\nv";
  for (Vertex v : cut->side_a) out << ' ' << v;
  out << " 0\n";
  return out.str();
}

// Side B is everything not listed on the v lines.
inline std::optional<Cut> parse_cut_witness(std::string_view text, int num_vertices) {
  std::optional<bool> found;
  std::vector<bool> in_a(static_cast<std::size_t>(num_vertices), false);
  bool terminated = false;
  auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    auto toks = detail::split_ws(lines[i]);
    if (toks.empty() || toks[0] == "c") continue;
    if (toks[0] == "s") {
      if (found || toks.size() != 2) throw ParseError(line_no, "malformed status line");
      if (toks[1] == "CUT-FOUND") found = true;
      else if (toks[1] == "NO-CUT") found = false;
      else throw ParseError(line_no, "unknown status '" + std::string(toks[1]) + "'");
      continue;
    }
    if (toks[0] != "v") throw ParseError(line_no, "unexpected line");
    for (std::size_t k = 1; k < toks.size(); ++k) {
      auto v = detail::to_int(toks[k], line_no);
      if (v == 0) {
        terminated = true;
        continue;
      }
      if (terminated) throw ParseError(line_no, "values after terminating 0");
      if (v < 1 || v > num_vertices) throw ParseError(line_no, "vertex out of range");
      if (in_a[v - 1]) throw ParseError(line_no, "vertex listed twice");
      in_a[v - 1] = true;
    }
  }
  if (!found) throw ParseError("missing status line");
  if (!*found) return std::nullopt;
  return Cut::from_membership(in_a);
}

}  // namespace naecut
