#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "naecut/colouring.hpp"
#include "naecut/detail/text.hpp"
#include "naecut/error.hpp"
#include "naecut/formula.hpp"
#include "naecut/graph.hpp"
#include "naecut/transform.hpp"

namespace naecut {

// Two tetrahedra glued on the face {a,b,c}: apexes x and y are joined to all
// of a, b, c, and a, b, c form a triangle. x and y are not adjacent.
struct Gadget {
  Vertex x = 0, y = 0;
  Vertex a = 0, b = 0, c = 0;

  std::array<Edge, 9> edges() const {
    return {{{x, a}, {x, b}, {x, c}, {y, a}, {y, b}, {y, c}, {a, b}, {b, c}, {a, c}}};
  }
  std::array<Vertex, 3> internals() const { return {a, b, c}; }
  bool contains(Vertex v) const { return v == x || v == y || v == a || v == b || v == c; }

  friend bool operator==(const Gadget&, const Gadget&) = default;
};

// Provenance of the reduced graph. Clause ids are 1-based positions in the
// transformed formula.
struct ReductionMap {
  std::vector<Vertex> var_vertex;  // var_vertex[v-1]
  std::vector<std::pair<int, Triangle>> clause_triangles;
  std::vector<std::pair<int, Gadget>> clause_gadgets;

  int num_vars() const { return static_cast<int>(var_vertex.size()); }

  friend bool operator==(const ReductionMap&, const ReductionMap&) = default;
};

struct Reduction {
  Graph graph;
  ReductionMap map;
};

struct BuildOptions {
  // Test hook: leave out edge ab of every gadget, which destroys its forcing.
  bool break_gadget = false;
};

// Vertices 1..n' are the variables; each 2-clause (x OR NOT y) then gets three
// fresh internal vertices in clause order. Requires every structural property.
inline Reduction build_graph(const CnfFormula& f, const BuildOptions& options = {}) {
  const auto props = check_properties(f);
  if (!props.all()) {
    std::string failed;
    for (int i = 1; i <= 6; ++i)
      if (!props.property(i)) failed += (failed.empty() ? "" : ",") + std::to_string(i);
    throw PreconditionError("formula violates structural properties " + failed);
  }
  Reduction r;
  auto& map = r.map;
  for (Var v = 1; v <= f.num_vars(); ++v) map.var_vertex.push_back(v);

  std::vector<Edge> edges;
  Vertex next = f.num_vars();
  for (std::size_t ci = 0; ci < f.num_clauses(); ++ci) {
    const auto& c = f.clause(ci);
    const int id = static_cast<int>(ci + 1);
    if (c.size() == 3) {
      Triangle t{c[0].var, c[1].var, c[2].var};
      map.clause_triangles.emplace_back(id, t);
      edges.emplace_back(t[0], t[1]);
      edges.emplace_back(t[1], t[2]);
      edges.emplace_back(t[0], t[2]);
    } else {
      Gadget gad{c[0].var, c[1].var, next + 1, next + 2, next + 3};
      next += 3;
      map.clause_gadgets.emplace_back(id, gad);
      for (const auto& e : gad.edges()) {
        if (options.break_gadget && e == Edge{gad.a, gad.b}) continue;
        edges.push_back(e);
      }
    }
  }
  r.graph = Graph(next, std::move(edges));
  return r;
}

// Clause triangles get colours 1,2,3 in literal order, untouched variable
// vertices colour 1, and each gadget's a,b,c the three smallest colours not
// used on its endpoints.
inline Colouring construct_5_colouring(const Graph& g, const ReductionMap& rm) {
  std::vector<int> colour(static_cast<std::size_t>(g.num_vertices()), 0);
  for (Var v = 1; v <= rm.num_vars(); ++v) colour[rm.var_vertex[v - 1] - 1] = 1;
  for (const auto& [id, t] : rm.clause_triangles)
    for (int i = 0; i < 3; ++i) colour[t[i] - 1] = i + 1;
  for (const auto& [id, gad] : rm.clause_gadgets) {
    const int cx = colour[gad.x - 1], cy = colour[gad.y - 1];
    std::array<int, 3> picked{};
    std::size_t k = 0;
    for (int col = 1; col <= 5 && k < 3; ++col)
      if (col != cx && col != cy) picked[k++] = col;
    colour[gad.a - 1] = picked[0];
    colour[gad.b - 1] = picked[1];
    colour[gad.c - 1] = picked[2];
  }
  Colouring c{0, std::move(colour)};
  for (int col : c.colours) c.k = std::max(c.k, col);
  if (std::find(c.colours.begin(), c.colours.end(), 0) != c.colours.end() || !verify_colouring(g, c))
    throw std::logic_error("constructed colouring is not proper");
  return c;
}

namespace detail {

// Moves one vertex lying in no triangle to the empty side. Throws if the cut
// cannot be made non-empty on both sides that way.
inline void rebalance(const Graph& g, std::vector<bool>& in_a) {
  const auto on_a = std::count(in_a.begin(), in_a.end(), true);
  if (on_a != 0 && on_a != static_cast<long>(in_a.size())) return;
  if (in_a.size() < 2) throw WitnessError("a cut needs at least two vertices");
  const auto counts = triangle_counts(g);
  for (std::size_t i = in_a.size(); i-- > 0;) {
    if (counts[i] == 0) {
      in_a[i] = !in_a[i];
      return;
    }
  }
  throw WitnessError("all vertices on one side and none of them is triangle-free");
}

}  // namespace detail

// True variables to side A; each gadget's a joins its endpoints' side, b and c
// the other side.
inline Cut assignment_to_cut(const CnfFormula& f, const Reduction& r, const Assignment& a) {
  if (!nae_satisfies(f, a)) throw WitnessError("assignment does not NAE-satisfy the formula");
  const auto& rm = r.map;
  std::vector<bool> in_a(static_cast<std::size_t>(r.graph.num_vertices()), false);
  for (Var v = 1; v <= rm.num_vars(); ++v) in_a[rm.var_vertex[v - 1] - 1] = a[v];
  for (const auto& [id, gad] : rm.clause_gadgets) {
    const bool side = in_a[gad.x - 1];
    in_a[gad.a - 1] = side;
    in_a[gad.b - 1] = !side;
    in_a[gad.c - 1] = !side;
  }
  detail::rebalance(r.graph, in_a);
  Cut cut = Cut::from_membership(in_a);
  if (!verify_cut_triangle_free(r.graph, cut))
    throw std::logic_error("satisfying assignment produced a cut with a monochromatic triangle");
  return cut;
}

// Variable true iff its vertex is on side A.
inline Assignment cut_to_assignment(const Reduction& r, const Cut& cut) {
  if (!verify_cut_triangle_free(r.graph, cut)) throw WitnessError("cut is not triangle-free");
  std::vector<bool> in_a(static_cast<std::size_t>(r.graph.num_vertices()), false);
  for (Vertex v : cut.side_a) in_a[v - 1] = true;
  Assignment a = Assignment::all_false(r.map.num_vars());
  for (Var v = 1; v <= r.map.num_vars(); ++v) a.set(v, in_a[r.map.var_vertex[v - 1] - 1]);
  return a;
}

// ---------------------------------------------------------------------------
// Triangles back to clauses

struct Extraction {
  CnfFormula formula;
  std::vector<Var> vertex_var;  // vertex_var[v-1]; vertex v becomes variable v
};

// One variable per vertex, one monotone clause per triangle.
inline Extraction extract_nae(const Graph& g) {
  std::vector<Clause> clauses;
  for (const auto& t : enumerate_triangles(g)) clauses.push_back(Clause{pos(t[0]), pos(t[1]), pos(t[2])});
  Extraction e;
  e.formula = CnfFormula(g.num_vertices(), std::move(clauses));
  for (Vertex v = 1; v <= g.num_vertices(); ++v) e.vertex_var.push_back(v);
  return e;
}

// Turns a NAE witness of extract_nae(g) into a cut, moving one triangle-free
// vertex across if every vertex landed on the same side.
inline Cut cut_from_nae_witness(const Graph& g, const Extraction& e, const Assignment& a) {
  if (!nae_satisfies(e.formula, a)) throw WitnessError("assignment does not NAE-satisfy the extraction");
  std::vector<bool> in_a(static_cast<std::size_t>(g.num_vertices()), false);
  for (Vertex v = 1; v <= g.num_vertices(); ++v) in_a[v - 1] = a[e.vertex_var[v - 1]];
  detail::rebalance(g, in_a);
  return Cut::from_membership(in_a);
}

// ---------------------------------------------------------------------------
// Triangle provenance

enum class TriangleKind { kClause, kGadget, kStray };

// A triangle is either a clause triangle or lies wholly inside one gadget.
inline TriangleKind classify_triangle(const ReductionMap& rm, const Triangle& t) {
  for (const auto& [id, ct] : rm.clause_triangles) {
    Triangle sorted = ct;
    std::sort(sorted.begin(), sorted.end());
    if (sorted == t) return TriangleKind::kClause;
  }
  for (const auto& [id, gad] : rm.clause_gadgets)
    if (gad.contains(t[0]) && gad.contains(t[1]) && gad.contains(t[2])) return TriangleKind::kGadget;
  return TriangleKind::kStray;
}

// ---------------------------------------------------------------------------
// Gadget certification

struct GadgetReport {
  bool endpoints_forced_together = false;  // every triangle-free cut keeps x, y on one side
  bool cut_exists = false;                 // some triangle-free cut exists
  bool colour_extendable = false;          // all 25 endpoint colour pairs extend to a 5-colouring
  bool endpoint_shape = false;             // x, y non-adjacent and of degree 3
  int triangles = 0;

  bool all() const { return endpoints_forced_together && cut_exists && colour_extendable && endpoint_shape; }
};

// Canonical gadget on vertices x=1, y=2, a=3, b=4, c=5.
inline Gadget canonical_gadget() { return Gadget{1, 2, 3, 4, 5}; }

inline Graph gadget_graph(const Gadget& gad = canonical_gadget()) {
  const auto e = gad.edges();
  return Graph(5, std::vector<Edge>(e.begin(), e.end()));
}

// Exhaustive check of a 5-vertex graph with endpoints x and y: all 32
// bipartitions, and all 25 ordered endpoint colour pairs against the 125
// colourings of the remaining three vertices.
inline GadgetReport gadget_certify(const Graph& g, Vertex x, Vertex y) {
  if (g.num_vertices() != 5) throw PreconditionError("gadget graph must have exactly 5 vertices");
  GadgetReport r;
  r.triangles = static_cast<int>(enumerate_triangles(g).size());
  r.endpoint_shape = !g.adjacent(x, y) && g.degree(x) == 3 && g.degree(y) == 3;

  r.endpoints_forced_together = true;
  for (unsigned mask = 0; mask < 32; ++mask) {
    std::vector<bool> in_a(5);
    for (int i = 0; i < 5; ++i) in_a[i] = (mask >> i) & 1u;
    const Cut cut = Cut::from_membership(in_a);
    if (!verify_cut_triangle_free(g, cut)) continue;
    r.cut_exists = true;
    if (in_a[x - 1] != in_a[y - 1]) r.endpoints_forced_together = false;
  }

  std::vector<Vertex> rest;
  for (Vertex v = 1; v <= 5; ++v)
    if (v != x && v != y) rest.push_back(v);
  r.colour_extendable = true;
  for (int cx = 1; cx <= 5; ++cx) {
    for (int cy = 1; cy <= 5; ++cy) {
      bool extends = false;
      for (int code = 0; code < 125 && !extends; ++code) {
        Colouring c{5, std::vector<int>(5, 0)};
        c.colours[x - 1] = cx;
        c.colours[y - 1] = cy;
        c.colours[rest[0] - 1] = code % 5 + 1;
        c.colours[rest[1] - 1] = code / 5 % 5 + 1;
        c.colours[rest[2] - 1] = code / 25 + 1;
        extends = verify_colouring(g, c);
      }
      if (!extends) r.colour_extendable = false;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Map file: "var <v> <vertex>", "tri <clause> <v1> <v2> <v3>",
// "gad <clause> <x> <y> <a> <b> <c>".

inline std::string emit_reduction_map(const ReductionMap& rm) {
  std::ostringstream out;
  for (Var v = 1; v <= rm.num_vars(); ++v) out << "var " << v << ' ' << rm.var_vertex[v - 1] << '\n';
  for (const auto& [id, t] : rm.clause_triangles)
    out << "tri " << id << ' ' << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  for (const auto& [id, g] : rm.clause_gadgets)
    out << "gad " << id << ' ' << g.x << ' ' << g.y << ' ' << g.a << ' ' << g.b << ' ' << g.c << '\n';
  return out.str();
}

inline ReductionMap parse_reduction_map(std::string_view text) {
  ReductionMap rm;
  std::map<int, Vertex> vars;
  auto lines = detail::split_lines(text);
  auto as_int = [](std::string_view tok, std::size_t line_no) {
    auto v = detail::to_int(tok, line_no);
    if (v < 1 || v > (1 << 30)) throw ParseError(line_no, "id out of range");
    return static_cast<int>(v);
  };
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    auto toks = detail::split_ws(lines[i]);
    if (toks.empty() || toks[0] == "c") continue;
    if (toks[0] == "var") {
      if (toks.size() != 3) throw ParseError(line_no, "expected 'var <v> <vertex>'");
      const int v = as_int(toks[1], line_no);
      if (!vars.emplace(v, as_int(toks[2], line_no)).second) throw ParseError(line_no, "variable listed twice");
    } else if (toks[0] == "tri") {
      if (toks.size() != 5) throw ParseError(line_no, "expected 'tri <clause> <v1> <v2> <v3>'");
      rm.clause_triangles.emplace_back(
          as_int(toks[1], line_no),
          Triangle{as_int(toks[2], line_no), as_int(toks[3], line_no), as_int(toks[4], line_no)});
    } else if (toks[0] == "gad") {
      if (toks.size() != 7) throw ParseError(line_no, "expected 'gad <clause> <x> <y> <a> <b> <c>'");
      rm.clause_gadgets.emplace_back(as_int(toks[1], line_no),
                                     Gadget{as_int(toks[2], line_no), as_int(toks[3], line_no),
                                            as_int(toks[4], line_no), as_int(toks[5], line_no),
                                            as_int(toks[6], line_no)});
    } else {
      throw ParseError(line_no, "unexpected line");
    }
  }
  if (!vars.empty() && static_cast<std::size_t>(vars.rbegin()->first) != vars.size())
    throw ParseError("map must list every variable 1..n exactly once");
  for (const auto& [v, vertex] : vars) rm.var_vertex.push_back(vertex);
  return rm;
}

// Problems found when laying a map over a graph; empty when consistent.
inline std::vector<std::string> check_map_against_graph(const Graph& g, const ReductionMap& rm) {
  std::vector<std::string> problems;
  auto in_range = [&](Vertex v) { return v >= 1 && v <= g.num_vertices(); };
  std::set<Vertex> var_vertices;
  for (Var v = 1; v <= rm.num_vars(); ++v) {
    const Vertex u = rm.var_vertex[v - 1];
    if (!in_range(u)) problems.push_back("variable " + std::to_string(v) + " maps outside the graph");
    if (!var_vertices.insert(u).second) problems.push_back("two variables share vertex " + std::to_string(u));
  }
  for (const auto& [id, t] : rm.clause_triangles) {
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (!g.adjacent(t[i], t[j]))
          problems.push_back("clause " + std::to_string(id) + " triangle misses edge " + std::to_string(t[i]) +
                             "-" + std::to_string(t[j]));
  }
  std::set<Vertex> internals;
  for (const auto& [id, gad] : rm.clause_gadgets) {
    for (auto [u, v] : gad.edges())
      if (!g.adjacent(u, v))
        problems.push_back("clause " + std::to_string(id) + " gadget misses edge " + std::to_string(u) + "-" +
                           std::to_string(v));
    if (g.adjacent(gad.x, gad.y)) problems.push_back("clause " + std::to_string(id) + " gadget endpoints adjacent");
    for (Vertex v : gad.internals()) {
      if (var_vertices.count(v)) problems.push_back("gadget internal " + std::to_string(v) + " is a variable vertex");
      if (!internals.insert(v).second) problems.push_back("gadget internal " + std::to_string(v) + " shared");
    }
  }
  return problems;
}

}  // namespace naecut
