#include <gtest/gtest.h>

#include "naecut/generator.hpp"
#include "naecut/reduction.hpp"
#include "naecut/solvers.hpp"
#include "naecut/transform.hpp"
#include "oracles.hpp"

namespace naecut {
namespace {

CnfFormula one_split() {
  return CnfFormula(6, {Clause{pos(1), pos(2), pos(3)}, Clause{pos(6), pos(4), pos(5)}, Clause{pos(1), neg(6)}});
}

TEST(BuildGraph, SingleClauseIsK3) {
  const auto r = build_graph(CnfFormula(3, {Clause{pos(1), pos(2), pos(3)}}));
  EXPECT_EQ(r.graph, Graph(3, {{1, 2}, {1, 3}, {2, 3}}));
  EXPECT_TRUE(r.map.clause_gadgets.empty());
  ASSERT_EQ(r.map.clause_triangles.size(), 1u);
  EXPECT_EQ(r.map.clause_triangles[0].first, 1);
}

TEST(BuildGraph, OneGadget) {
  const auto r = build_graph(one_split());
  EXPECT_EQ(r.graph.num_vertices(), 9);  // 6 variables + 3 internals
  EXPECT_EQ(r.graph.num_edges(), 6u + 9u);
  EXPECT_EQ(enumerate_triangles(r.graph).size(), 2u + 7u);
  ASSERT_EQ(r.map.clause_gadgets.size(), 1u);
  EXPECT_EQ(r.map.clause_gadgets[0].second, (Gadget{1, 6, 7, 8, 9}));
  EXPECT_EQ(r.map.clause_gadgets[0].first, 3);
}

TEST(BuildGraph, RejectsUntransformedInput) {
  const auto f = CnfFormula(9, {Clause{pos(1), pos(2), pos(3)}, Clause{pos(1), pos(4), pos(5)},
                                Clause{pos(1), pos(6), pos(7)}, Clause{pos(1), pos(8), pos(9)}});
  EXPECT_THROW(build_graph(f), PreconditionError);
}

TEST(BuildGraph, StructuralGuaranteesOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    InstanceRng rng(seed);
    const auto f = generate_instance(seed, rng.between(3, 14), rng.between(1, 20));
    const auto r = build_graph(split_repeated_variables(f).formula);
    EXPECT_LE(max_degree(r.graph), 8);
    const auto counts = triangle_counts(r.graph);
    for (Vertex v : r.map.var_vertex) EXPECT_LE(counts[v - 1], 7);
    for (const auto& [id, gad] : r.map.clause_gadgets)
      for (Vertex v : gad.internals()) EXPECT_EQ(counts[v - 1], 5);
    for (const auto& t : enumerate_triangles(r.graph))
      EXPECT_NE(classify_triangle(r.map, t), TriangleKind::kStray);
    EXPECT_TRUE(check_map_against_graph(r.graph, r.map).empty());
  }
}

TEST(BuildGraph, ClauseTrianglesAreVertexDisjoint) {
  const auto f = generate_instance(5, 9, 15);
  const auto r = build_graph(split_repeated_variables(f).formula);
  std::vector<int> seen(static_cast<std::size_t>(r.graph.num_vertices()) + 1, 0);
  for (const auto& [id, t] : r.map.clause_triangles)
    for (Vertex v : t) EXPECT_EQ(++seen[v], 1);
}

TEST(Construct5Colouring, K3) {
  const auto r = build_graph(CnfFormula(3, {Clause{pos(1), pos(2), pos(3)}}));
  const auto c = construct_5_colouring(r.graph, r.map);
  EXPECT_EQ(c.colours, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(c.k, 3);
}

TEST(Construct5Colouring, InternalsAvoidEndpointColours) {
  // endpoints coloured 1 and 2: variable 1 first in its triangle, 6 second
  {
    const auto f = CnfFormula(6, {Clause{pos(1), pos(2), pos(3)}, Clause{pos(4), pos(6), pos(5)}, Clause{pos(1), neg(6)}});
    const auto r = build_graph(f);
    const auto c = construct_5_colouring(r.graph, r.map);
    EXPECT_EQ(c.of(1), 1);
    EXPECT_EQ(c.of(6), 2);
    EXPECT_EQ((std::vector<int>{c.of(7), c.of(8), c.of(9)}), (std::vector<int>{3, 4, 5}));
  }
  // both endpoints coloured 1
  {
    const auto r = build_graph(one_split());
    const auto c = construct_5_colouring(r.graph, r.map);
    EXPECT_EQ(c.of(1), 1);
    EXPECT_EQ(c.of(6), 1);
    EXPECT_EQ((std::vector<int>{c.of(7), c.of(8), c.of(9)}), (std::vector<int>{2, 3, 4}));
    EXPECT_EQ(c.k, 4);
  }
}

TEST(Construct5Colouring, ProperOnRandomInstancesAndAgreesWithSearch) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    InstanceRng rng(seed + 300);
    const auto f = generate_instance(seed, rng.between(3, 14), rng.between(1, 20));
    const auto r = build_graph(split_repeated_variables(f).formula);
    const auto c = construct_5_colouring(r.graph, r.map);
    EXPECT_TRUE(verify_colouring(r.graph, c));
    EXPECT_LE(c.k, 5);
  }
  const auto f10 = generate_instance(10, 8, 10);
  const auto r = build_graph(split_repeated_variables(f10).formula);
  const auto found = find_k_colouring(r.graph, 5);
  ASSERT_TRUE(found);
  EXPECT_TRUE(verify_colouring(r.graph, *found));
}

TEST(AssignmentToCut, SingleTriangle) {
  const auto f = CnfFormula(3, {Clause{pos(1), pos(2), pos(3)}});
  const auto r = build_graph(f);
  const auto cut = assignment_to_cut(f, r, Assignment({true, true, false}));
  EXPECT_EQ(cut, (Cut{{1, 2}, {3}}));
  EXPECT_THROW(assignment_to_cut(f, r, Assignment({true, true, true})), WitnessError);
}

TEST(AssignmentToCut, GadgetPlacement) {
  const auto f = one_split();
  const auto r = build_graph(f);
  // x=1, y=6 true
  const Assignment a({true, false, false, true, false, true});
  const auto cut = assignment_to_cut(f, r, a);
  EXPECT_TRUE(verify_cut_triangle_free(r.graph, cut));
  EXPECT_EQ(cut, (Cut{{1, 4, 6, 7}, {2, 3, 5, 8, 9}}));
}

TEST(AssignmentToCut, EmptyFormulaIsRebalanced) {
  const auto f = CnfFormula(2, {});
  const auto r = build_graph(f);
  const auto cut = assignment_to_cut(f, r, Assignment({false, false}));
  EXPECT_EQ(cut, (Cut{{2}, {1}}));
  const auto lone = CnfFormula(1, {});
  EXPECT_THROW(assignment_to_cut(lone, build_graph(lone), Assignment({false})), WitnessError);
}

TEST(CutToAssignment, SingleTriangle) {
  const auto f = CnfFormula(3, {Clause{pos(1), pos(2), pos(3)}});
  const auto r = build_graph(f);
  const auto a = cut_to_assignment(r, Cut{{1}, {2, 3}});
  EXPECT_EQ(a, Assignment({true, false, false}));
  EXPECT_TRUE(nae_satisfies(f, a));
  EXPECT_THROW(cut_to_assignment(r, Cut{{}, {1, 2, 3}}), WitnessError);
}

TEST(CutToAssignment, GadgetCutsForceEqualEndpoints) {
  const auto g = gadget_graph();
  ReductionMap rm;
  rm.var_vertex = {1, 2};
  rm.clause_gadgets.emplace_back(1, canonical_gadget());
  const Reduction r{g, rm};
  int cuts = 0;
  for (unsigned mask = 0; mask < 32; ++mask) {
    std::vector<bool> in_a(5);
    for (int i = 0; i < 5; ++i) in_a[i] = (mask >> i) & 1u;
    const auto cut = Cut::from_membership(in_a);
    if (!verify_cut_triangle_free(g, cut)) continue;
    ++cuts;
    const auto a = cut_to_assignment(r, cut);
    EXPECT_EQ(a[1], a[2]);
  }
  EXPECT_EQ(cuts, static_cast<int>(oracle::triangle_free_cut_masks(g).size()));
  EXPECT_GT(cuts, 0);
}

TEST(CertificateTranslation, RandomRoundTrips) {
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 200; ++seed) {
    InstanceRng rng(seed + 900);
    const auto f = generate_instance(seed, rng.between(3, 12), rng.between(1, 14));
    const auto w = brute_force_nae(f);
    if (!w) continue;
    ++checked;
    const auto split = split_repeated_variables(f);
    const auto lifted = lift_assignment(split.map, *w);
    const auto r = build_graph(split.formula);
    const auto cut = assignment_to_cut(split.formula, r, lifted);
    EXPECT_TRUE(verify_cut_triangle_free(r.graph, cut));
    EXPECT_EQ(cut_to_assignment(r, cut), lifted);
  }
}

TEST(ExtractNae, SmallCases) {
  const auto k3 = extract_nae(Graph(3, {{1, 2}, {1, 3}, {2, 3}}));
  EXPECT_EQ(k3.formula, CnfFormula(3, {Clause{pos(1), pos(2), pos(3)}}));
  const auto tree = extract_nae(Graph(4, {{1, 2}, {2, 3}, {3, 4}}));
  EXPECT_EQ(tree.formula.num_clauses(), 0u);
  EXPECT_EQ(tree.formula.num_vars(), 4);
  const auto gad = extract_nae(gadget_graph());
  EXPECT_EQ(gad.formula.num_clauses(), 7u);
  EXPECT_EQ(occurrence_counts(gad.formula)[0], 3);
}

TEST(ExtractNae, OccurrencesAndIncidenceSubgraph) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    InstanceRng rng(seed + 77);
    const auto f = generate_instance(seed, rng.between(3, 14), rng.between(1, 20));
    const auto r = build_graph(split_repeated_variables(f).formula);
    const auto e = extract_nae(r.graph);
    for (int k : occurrence_counts(e.formula)) EXPECT_LE(k, 7);
    const auto inc = incidence_graph(e.formula).graph;
    for (auto [u, v] : inc.edges()) EXPECT_TRUE(r.graph.adjacent(u, v));
  }
}

// NAE on the extracted formula is exactly "no monochromatic triangle".
TEST(ExtractNae, NaeMatchesMonochromaticTriangles) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int n = 1 + static_cast<int>(seed % 10);
    const auto g = generate_graph(seed, n, 5, 8);
    const auto e = extract_nae(g);
    for (std::uint64_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<bool> in_a(n);
      for (int i = 0; i < n; ++i) in_a[i] = (mask >> i) & 1u;
      const auto cut = Cut::from_membership(in_a);
      EXPECT_EQ(nae_satisfies(e.formula, Assignment(in_a)), !find_monochromatic_triangle(g, cut).has_value());
    }
  }
}

TEST(CutFromNaeWitness, RebalancesOntoTriangleFreeVertex) {
  // triangle 1-2-3 plus isolated 4; all-false is not a witness, but a witness
  // putting 1 on A and 2,3,4 on B needs nothing
  const Graph g(4, {{1, 2}, {1, 3}, {2, 3}});
  const auto e = extract_nae(g);
  EXPECT_EQ(cut_from_nae_witness(g, e, Assignment({true, false, false, false})), (Cut{{1}, {2, 3, 4}}));
  // no triangles: everything false moves the last vertex across
  const Graph path(3, {{1, 2}, {2, 3}});
  EXPECT_EQ(cut_from_nae_witness(path, extract_nae(path), Assignment({false, false, false})), (Cut{{3}, {1, 2}}));
  const Graph single(1, {});
  EXPECT_THROW(cut_from_nae_witness(single, extract_nae(single), Assignment({false})), WitnessError);
}

TEST(GadgetCertify, CanonicalGadgetPasses) {
  const auto r = gadget_certify(gadget_graph(), 1, 2);
  EXPECT_TRUE(r.endpoints_forced_together);
  EXPECT_TRUE(r.cut_exists);
  EXPECT_TRUE(r.colour_extendable);
  EXPECT_TRUE(r.endpoint_shape);
  EXPECT_EQ(r.triangles, 7);
}

TEST(GadgetCertify, AddingEdgeXYBreaksShape) {
  auto edges = gadget_graph().edges();
  edges.emplace_back(1, 2);
  const auto r = gadget_certify(Graph(5, edges), 1, 2);
  EXPECT_FALSE(r.endpoint_shape);
}

TEST(GadgetCertify, RemovingEdgeABBreaksForcing) {
  auto edges = gadget_graph().edges();
  std::erase(edges, Edge{3, 4});
  const Graph g(5, edges);
  const auto r = gadget_certify(g, 1, 2);
  EXPECT_FALSE(r.endpoints_forced_together);
  // the oracle finds a separating cut too
  bool separating = false;
  for (auto mask : oracle::triangle_free_cut_masks(g)) separating |= ((mask & 1u) != ((mask >> 1) & 1u));
  EXPECT_TRUE(separating);
}

TEST(ReductionMap, TextRoundTripAndGraphCheck) {
  const auto f = generate_instance(3, 7, 9);
  const auto r = build_graph(split_repeated_variables(f).formula);
  const auto text = emit_reduction_map(r.map);
  EXPECT_EQ(parse_reduction_map(text), r.map);
  EXPECT_TRUE(check_map_against_graph(r.graph, r.map).empty());
  const auto broken = build_graph(split_repeated_variables(f).formula, BuildOptions{true});
  EXPECT_FALSE(check_map_against_graph(broken.graph, r.map).empty());
  EXPECT_THROW(parse_reduction_map("var 1 1\nvar 3 3\n"), ParseError);
  EXPECT_THROW(parse_reduction_map("tri 1 1 2\n"), ParseError);
  EXPECT_THROW(parse_reduction_map("bogus\n"), ParseError);
}

}  // namespace
}  // namespace naecut
