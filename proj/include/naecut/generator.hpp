#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "naecut/error.hpp"
#include "naecut/formula.hpp"
#include "naecut/graph.hpp"

namespace naecut {

// Reproducible random instances. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; bounded draws use rejection sampling
// on the raw 64-bit output instead of std::uniform_int_distribution, whose
// algorithm is implementation-defined. Same seed, same instance, everywhere.
class InstanceRng {
 public:
  explicit InstanceRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  // Uniform in [lo, hi].
  int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

  bool coin(std::uint64_t numerator, std::uint64_t denominator) { return below(denominator) < numerator; }

 private:
  std::mt19937_64 engine_;
};

inline constexpr int kMaxClauseRetries = 1000;

// Monotone 3-CNF over n variables with m clauses, each a uniform 3-subset drawn
// as three successive distinct variables and listed in increasing order. With
// distinct_pairs, a clause sharing a variable pair with an earlier clause is
// redrawn, up to kMaxClauseRetries times.
inline CnfFormula generate_instance(std::uint64_t seed, int n, int m, bool distinct_pairs = false) {
  if (n < 3) throw PreconditionError("need at least 3 variables");
  if (m < 0) throw PreconditionError("negative clause count");
  InstanceRng rng(seed);
  std::set<std::pair<Var, Var>> used;
  std::vector<Clause> clauses;
  for (int i = 0; i < m; ++i) {
    std::array<Var, 3> vars{};
    bool placed = false;
    for (int attempt = 0; attempt < kMaxClauseRetries && !placed; ++attempt) {
      vars[0] = rng.between(1, n);
      do vars[1] = rng.between(1, n);
      while (vars[1] == vars[0]);
      do vars[2] = rng.between(1, n);
      while (vars[2] == vars[0] || vars[2] == vars[1]);
      std::sort(vars.begin(), vars.end());
      const std::array<std::pair<Var, Var>, 3> pairs{{{vars[0], vars[1]}, {vars[0], vars[2]}, {vars[1], vars[2]}}};
      if (distinct_pairs && std::any_of(pairs.begin(), pairs.end(), [&](const auto& p) { return used.count(p); }))
        continue;
      used.insert(pairs.begin(), pairs.end());
      placed = true;
    }
    if (!placed)
      throw PreconditionError("could not place clause " + std::to_string(i + 1) + " with distinct pairs");
    clauses.push_back(Clause{pos(vars[0]), pos(vars[1]), pos(vars[2])});
  }
  return CnfFormula(n, std::move(clauses));
}

// G(n, p) with p = numerator/denominator, edges drawn in (u, v) order.
inline Graph generate_graph(std::uint64_t seed, int n, std::uint64_t numerator, std::uint64_t denominator) {
  InstanceRng rng(seed);
  std::vector<Edge> edges;
  for (Vertex u = 1; u <= n; ++u)
    for (Vertex v = u + 1; v <= n; ++v)
      if (rng.coin(numerator, denominator)) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

}  // namespace naecut
