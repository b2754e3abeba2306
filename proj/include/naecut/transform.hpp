#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "naecut/detail/text.hpp"
#include "naecut/error.hpp"
#include "naecut/formula.hpp"

namespace naecut {

// Where an output clause of split_repeated_variables came from.
struct ClauseOrigin {
  enum class Kind { kPrime, kEquality };
  Kind kind = Kind::kPrime;
  // kPrime: 0-based index of the rewritten input clause.
  // kEquality: the original variable whose copies the clause chains.
  int source = 0;
  // kEquality only: the clause is (y_link OR NOT y_{link+1}), link is 1-based.
  int link = 0;

  friend bool operator==(const ClauseOrigin&, const ClauseOrigin&) = default;
};

struct TransformMap {
  int original_vars = 0;
  int output_vars = 0;
  // replacements[x-1] = y_1..y_k for original variable x; [x] when x occurs at most once.
  std::vector<std::vector<Var>> replacements;
  // One entry per output clause (empty when the map was parsed from text).
  std::vector<ClauseOrigin> origins;
};

struct TransformResult {
  CnfFormula formula;
  TransformMap map;
};

// Replaces every occurrence of a variable occurring k > 1 times by its own copy
// y_1..y_k and chains the copies with (y_i OR NOT y_{i+1}), whose NAE reading
// forces y_i = y_{i+1}.
//
// Numbering: y_1 keeps the original index; y_2..y_k get fresh indices from
// num_vars+1 upwards, handed out variable by variable (increasing original id),
// each variable's copies in occurrence order (clause index, position).
// Output clauses: the rewritten clauses in input order, then the chain clauses
// grouped by original variable.
inline TransformResult split_repeated_variables(const CnfFormula& f) {
  if (!is_monotone_3sat(f))
    throw PreconditionError("variable splitting needs a monotone 3-CNF formula");

  const int n = f.num_vars();
  // occurrences[x-1] = (clause, position) pairs in clause order
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> occurrences(static_cast<std::size_t>(n));
  for (std::size_t ci = 0; ci < f.num_clauses(); ++ci)
    for (std::size_t p = 0; p < f.clause(ci).size(); ++p)
      occurrences[f.clause(ci)[p].var - 1].emplace_back(ci, p);

  TransformResult out;
  auto& map = out.map;
  map.original_vars = n;
  map.replacements.resize(static_cast<std::size_t>(n));

  std::vector<std::vector<Var>> renamed(f.num_clauses());
  for (std::size_t ci = 0; ci < f.num_clauses(); ++ci)
    for (const auto& l : f.clause(ci)) renamed[ci].push_back(l.var);

  Var next = n;
  for (Var x = 1; x <= n; ++x) {
    auto& copies = map.replacements[x - 1];
    const auto& occ = occurrences[x - 1];
    copies.push_back(x);
    for (std::size_t j = 1; j < occ.size(); ++j) {
      Var y = ++next;
      copies.push_back(y);
      renamed[occ[j].first][occ[j].second] = y;
    }
  }
  map.output_vars = next;

  std::vector<Clause> clauses;
  for (std::size_t ci = 0; ci < f.num_clauses(); ++ci) {
    std::vector<Literal> lits;
    for (Var v : renamed[ci]) lits.push_back(pos(v));
    clauses.emplace_back(std::move(lits));
    map.origins.push_back({ClauseOrigin::Kind::kPrime, static_cast<int>(ci), 0});
  }
  for (Var x = 1; x <= n; ++x) {
    const auto& copies = map.replacements[x - 1];
    for (std::size_t i = 0; i + 1 < copies.size(); ++i) {
      clauses.push_back(Clause{pos(copies[i]), neg(copies[i + 1])});
      map.origins.push_back({ClauseOrigin::Kind::kEquality, x, static_cast<int>(i + 1)});
    }
  }
  out.formula = CnfFormula(next, std::move(clauses));
  return out;
}

// The six structural properties of a transformed formula:
//   1. every clause is (x OR y OR z) or (x OR NOT y)
//   2. every variable occurs at most three times
//   3. two variables share at most one clause
//   4. every occurring variable sits in exactly one three-literal clause
//   5. a variable occurring once or twice has an un-negated occurrence
//   6. a variable occurring three times is negated exactly once
// Variables that never occur are not constrained by 4-6.
//
// Property 5 is evaluated as "appears un-negated"; the stronger reading
// "never appears negated" is reported separately because the last copy y_k of
// every chain occurs twice with one negation, so split_repeated_variables can
// never satisfy it.
struct PropertyReport {
  std::array<bool, 6> holds{};
  bool only_unnegated_when_rare = true;

  bool all() const { return std::all_of(holds.begin(), holds.end(), [](bool b) { return b; }); }
  bool property(int i) const { return holds.at(static_cast<std::size_t>(i - 1)); }
};

inline PropertyReport check_properties(const CnfFormula& f) {
  PropertyReport r;
  r.holds.fill(true);
  const auto n = static_cast<std::size_t>(f.num_vars());
  std::vector<int> total(n, 0), negated(n, 0), in_three(n, 0);
  std::map<std::pair<Var, Var>, int> pair_count;

  for (const auto& c : f.clauses()) {
    const bool three_pos = c.size() == 3 &&
                           std::none_of(c.begin(), c.end(), [](const Literal& l) { return l.negated; });
    const bool two_mixed = c.size() == 2 && !c[0].negated && c[1].negated;
    if (!three_pos && !two_mixed) r.holds[0] = false;
    for (std::size_t i = 0; i < c.size(); ++i) {
      auto v = static_cast<std::size_t>(c[i].var - 1);
      ++total[v];
      if (c[i].negated) ++negated[v];
      if (c.size() == 3) ++in_three[v];
      for (std::size_t j = i + 1; j < c.size(); ++j)
        ++pair_count[{std::min(c[i].var, c[j].var), std::max(c[i].var, c[j].var)}];
    }
  }
  for (const auto& [pair, count] : pair_count)
    if (count > 1) r.holds[2] = false;
  for (std::size_t v = 0; v < n; ++v) {
    if (total[v] == 0) continue;
    if (total[v] > 3) r.holds[1] = false;
    if (in_three[v] != 1) r.holds[3] = false;
    if (total[v] <= 2) {
      if (negated[v] == total[v]) r.holds[4] = false;
      if (negated[v] > 0) r.only_unnegated_when_rare = false;
    }
    if (total[v] == 3 && negated[v] != 1) r.holds[5] = false;
  }
  return r;
}

// Every copy of x takes x's value.
inline Assignment lift_assignment(const TransformMap& m, const Assignment& a) {
  if (a.size() < m.original_vars)
    throw PreconditionError("assignment does not cover the original variables");
  Assignment out = Assignment::all_false(m.output_vars);
  for (Var x = 1; x <= m.original_vars; ++x)
    for (Var y : m.replacements[x - 1]) out.set(y, a[x]);
  return out;
}

// Reads x's value off its copies; throws WitnessError if the copies disagree.
inline Assignment project_assignment(const TransformMap& m, const Assignment& a) {
  if (a.size() < m.output_vars)
    throw PreconditionError("assignment does not cover the transformed variables");
  Assignment out = Assignment::all_false(m.original_vars);
  for (Var x = 1; x <= m.original_vars; ++x) {
    const auto& copies = m.replacements[x - 1];
    const bool value = a[copies.front()];
    for (Var y : copies)
      if (a[y] != value)
        throw WitnessError("equality chain of variable " + std::to_string(x) + " broken at copy " +
                           std::to_string(y));
    out.set(x, value);
  }
  return out;
}

// "map <orig> <y1> <y2> ..." one line per original variable.
inline std::vector<std::string> transform_map_lines(const TransformMap& m) {
  std::vector<std::string> lines;
  for (Var x = 1; x <= m.original_vars; ++x) {
    std::string line = "map " + std::to_string(x);
    for (Var y : m.replacements[x - 1]) line += ' ' + std::to_string(y);
    lines.push_back(std::move(line));
  }
  return lines;
}

inline std::string emit_transform_map(const TransformMap& m) {
  std::string out;
  for (const auto& line : transform_map_lines(m)) out += line + '\n';
  return out;
}

// Accepts bare "map ..." lines and "c map ..." comments, so a transformed
// DIMACS file doubles as its own map. Other lines are ignored.
inline TransformMap parse_transform_map(std::string_view text) {
  std::map<Var, std::vector<Var>> rows;
  auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    auto toks = detail::split_ws(lines[i]);
    std::size_t at = 0;
    if (!toks.empty() && toks[0] == "c") at = 1;
    if (toks.size() <= at || toks[at] != "map") continue;
    if (toks.size() < at + 3) throw ParseError(line_no, "map line needs an original and at least one copy");
    auto x = detail::to_int(toks[at + 1], line_no);
    if (x < 1 || x > (1 << 30)) throw ParseError(line_no, "bad variable");
    if (rows.count(static_cast<Var>(x))) throw ParseError(line_no, "variable mapped twice");
    std::vector<Var> copies;
    for (std::size_t k = at + 2; k < toks.size(); ++k) {
      auto y = detail::to_int(toks[k], line_no);
      if (y < 1 || y > (1 << 30)) throw ParseError(line_no, "bad copy variable");
      copies.push_back(static_cast<Var>(y));
    }
    rows[static_cast<Var>(x)] = std::move(copies);
  }
  TransformMap m;
  m.original_vars = rows.empty() ? 0 : rows.rbegin()->first;
  if (static_cast<std::size_t>(m.original_vars) != rows.size())
    throw ParseError("map must list every original variable 1..n exactly once");
  std::vector<bool> seen;
  for (auto& [x, copies] : rows) {
    for (Var y : copies) {
      if (static_cast<std::size_t>(y) >= seen.size()) seen.resize(static_cast<std::size_t>(y) + 1, false);
      if (seen[y]) throw ParseError("copy variable " + std::to_string(y) + " appears in two lists");
      seen[y] = true;
      m.output_vars = std::max(m.output_vars, y);
    }
    m.replacements.push_back(std::move(copies));
  }
  return m;
}

}  // namespace naecut
