#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "naecut/colouring.hpp"
#include "naecut/formula.hpp"
#include "naecut/graph.hpp"
#include "naecut/reduction.hpp"
#include "naecut/solvers.hpp"
#include "naecut/transform.hpp"

namespace naecut {

struct RoundtripOptions {
  SearchBudget budget;
  BuildOptions build;
};

// Outcome of pushing one monotone 3-CNF instance through the whole pipeline:
// formula, split formula, reduced graph, and the formula extracted back from
// the graph's triangles.
struct InstanceReport {
  bool satisfiable = false;  // oracle verdict on the input formula

  // transform
  bool properties_hold = false;
  bool lift_project_identity = false;
  bool transform_agrees = false;  // split formula has the same verdict

  // reduction, forward and backward
  bool cut_agrees = false;             // triangle-free cut exists iff satisfiable
  bool forward_certificate = false;    // witness -> cut verifies
  bool backward_certificate = false;   // found cut -> assignment satisfies both formulas
  bool extraction_agrees = false;      // extract_nae(graph) has the same verdict
  bool extraction_certificate = false; // its witness, rebalanced, is a triangle-free cut

  // structure of the reduced graph
  int vertices = 0;
  int edges = 0;
  int triangles = 0;
  int max_degree = 0;
  int colours = 0;
  bool colouring_proper = false;
  bool triangles_classified = false;    // clause triangle or inside one gadget
  bool internal_in_five = false;        // gadget internals lie in exactly 5 triangles
  int max_variable_triangles = 0;       // over variable vertices
  int max_extracted_occurrences = 0;

  // canonical witness text, for determinism checks
  std::string witnesses;

  bool structure_ok() const {
    return max_degree <= 8 && colouring_proper && colours <= 5 && triangles_classified && internal_in_five &&
           max_variable_triangles <= 7 && max_extracted_occurrences <= 7;
  }
  bool ok() const {
    return properties_hold && lift_project_identity && transform_agrees && cut_agrees && forward_certificate &&
           backward_certificate && extraction_agrees && extraction_certificate && structure_ok();
  }
};

inline InstanceReport check_instance(const CnfFormula& f, const RoundtripOptions& options = {}) {
  InstanceReport r;
  const auto witness = solve_nae(f, options.budget);
  r.satisfiable = witness.has_value();

  const auto split = split_repeated_variables(f);
  const auto& g_formula = split.formula;
  r.properties_hold = check_properties(g_formula).all();

  const auto split_witness = solve_nae(g_formula, options.budget);
  r.transform_agrees = split_witness.has_value() == r.satisfiable;
  r.lift_project_identity = true;
  std::optional<Assignment> lifted;
  if (witness) {
    lifted = lift_assignment(split.map, *witness);
    r.lift_project_identity = nae_satisfies(g_formula, *lifted) && project_assignment(split.map, *lifted) == *witness;
  }
  if (split_witness) {
    try {
      const auto projected = project_assignment(split.map, *split_witness);
      r.lift_project_identity = r.lift_project_identity && nae_satisfies(f, projected) &&
                                lift_assignment(split.map, projected) == *split_witness;
    } catch (const WitnessError&) {
      r.lift_project_identity = false;
    }
  }

  const auto red = build_graph(g_formula, options.build);
  const auto& g = red.graph;
  r.vertices = g.num_vertices();
  r.edges = static_cast<int>(g.num_edges());
  r.max_degree = max_degree(g);
  const auto tris = enumerate_triangles(g);
  r.triangles = static_cast<int>(tris.size());

  const auto colouring = construct_5_colouring(g, red.map);
  r.colours = colouring.k;
  r.colouring_proper = verify_colouring(g, colouring);

  r.triangles_classified = std::all_of(tris.begin(), tris.end(), [&](const Triangle& t) {
    return classify_triangle(red.map, t) != TriangleKind::kStray;
  });
  const auto counts = triangle_counts(g);
  r.internal_in_five = true;
  for (const auto& [id, gad] : red.map.clause_gadgets)
    for (Vertex v : gad.internals())
      if (counts[v - 1] != 5) r.internal_in_five = false;
  for (Vertex v : red.map.var_vertex) r.max_variable_triangles = std::max(r.max_variable_triangles, counts[v - 1]);

  const auto cut = search_cut(g, options.budget);
  r.cut_agrees = cut.has_value() == r.satisfiable;
  r.forward_certificate = true;
  if (lifted) {
    try {
      r.forward_certificate = verify_cut_triangle_free(g, assignment_to_cut(g_formula, red, *lifted));
    } catch (const WitnessError&) {
      r.forward_certificate = false;
    }
  }
  r.backward_certificate = true;
  if (cut) {
    const auto back = cut_to_assignment(red, *cut);
    r.backward_certificate = nae_satisfies(g_formula, back);
    if (r.backward_certificate) {
      try {
        r.backward_certificate = nae_satisfies(f, project_assignment(split.map, back));
      } catch (const WitnessError&) {
        r.backward_certificate = false;
      }
    }
  }

  const auto extraction = extract_nae(g);
  const auto occ = occurrence_counts(extraction.formula);
  r.max_extracted_occurrences = occ.empty() ? 0 : *std::max_element(occ.begin(), occ.end());
  const auto extracted_witness = search_nae(extraction.formula, options.budget);
  r.extraction_agrees = extracted_witness.has_value() == r.satisfiable;
  r.extraction_certificate = true;
  if (extracted_witness) {
    try {
      r.extraction_certificate = verify_cut_triangle_free(g, cut_from_nae_witness(g, extraction, *extracted_witness));
    } catch (const WitnessError&) {
      r.extraction_certificate = false;
    }
  }

  r.witnesses = emit_nae_witness(witness) + emit_nae_witness(split_witness) + emit_cut_witness(cut) +
                emit_nae_witness(extracted_witness) + emit_colouring(colouring);
  return r;
}

}  // namespace naecut
