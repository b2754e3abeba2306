#include <gtest/gtest.h>

#include "naecut/generator.hpp"
#include "naecut/nae_search.hpp"
#include "naecut/solvers.hpp"
#include "oracles.hpp"

namespace naecut {
namespace {

// Mixed-polarity formulas with 2- and 3-literal clauses.
CnfFormula random_mixed(std::uint64_t seed, int n, int m) {
  InstanceRng rng(seed);
  std::vector<Clause> clauses;
  for (int i = 0; i < m; ++i) {
    const int width = (n < 3 || rng.coin(1, 3)) ? 2 : 3;
    std::vector<Literal> lits;
    while (static_cast<int>(lits.size()) < width) {
      const Var v = rng.between(1, n);
      if (std::any_of(lits.begin(), lits.end(), [v](const Literal& l) { return l.var == v; })) continue;
      lits.push_back(Literal{v, rng.coin(1, 2)});
    }
    clauses.emplace_back(std::move(lits));
  }
  return CnfFormula(n, std::move(clauses));
}

TEST(NaeSearch, LexSmallestMatchesEnumeration) {
  int unsat = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const int n = 2 + static_cast<int>(seed % 13);
    const auto f = random_mixed(seed, n, static_cast<int>(seed % (2 * n + 3)));
    const auto expected = brute_force_nae(f);
    EXPECT_EQ(search_nae(f), expected) << "seed " << seed;
    EXPECT_EQ(expected.has_value(), oracle::nae_satisfiable(f)) << "seed " << seed;
    unsat += !expected;
  }
  EXPECT_GT(unsat, 20);
}

TEST(NaeSearch, CutMatchesEnumeration) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const int n = static_cast<int>(seed % 15);
    const auto g = generate_graph(seed, n, 1 + seed % 5, 6);
    EXPECT_EQ(search_cut(g), brute_force_cut(g)) << "seed " << seed;
  }
}

TEST(NaeSearch, ManyIndependentComponents) {
  // 50 disjoint copies of K4 (each has a cut) plus one K5 far down the id range.
  std::vector<Edge> edges;
  auto add_clique = [&](int base, int size) {
    for (int u = 0; u < size; ++u)
      for (int v = u + 1; v < size; ++v) edges.emplace_back(base + u, base + v);
  };
  for (int i = 0; i < 50; ++i) add_clique(1 + 4 * i, 4);
  const Graph ok(200, edges);
  const auto cut = search_cut(ok);
  ASSERT_TRUE(cut);
  EXPECT_TRUE(verify_cut_triangle_free(ok, *cut));
  add_clique(201, 5);
  EXPECT_FALSE(search_cut(Graph(205, edges)));
}

TEST(NaeSearch, BudgetExceededIsNotUnsat) {
  std::vector<Clause> clauses;
  for (int a = 1; a <= 7; ++a)
    for (int b = a + 1; b <= 7; ++b)
      for (int c = b + 1; c <= 7; ++c) clauses.push_back(Clause{pos(a), pos(b), pos(c)});
  const CnfFormula f(7, clauses);
  EXPECT_THROW(search_nae(f, SearchBudget{3}), BudgetExceeded);
  EXPECT_FALSE(search_nae(f));
}

TEST(NaeSearch, RejectsBadConstraints) {
  EXPECT_THROW(NaeSearch(3, {{1}}, 10), PreconditionError);
  EXPECT_THROW(NaeSearch(3, {{1, 4}}, 10), PreconditionError);
  EXPECT_THROW(NaeSearch(3, {{1, 0}}, 10), PreconditionError);
}

TEST(NaeSearch, NoConstraintsGivesAllFalse) {
  NaeSearch s(4, {}, 10);
  EXPECT_EQ(s.lex_smallest(), (std::vector<bool>{false, false, false, false}));
  EXPECT_EQ(s.nodes(), 0u);
}

}  // namespace
}  // namespace naecut
