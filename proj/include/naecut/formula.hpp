#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "naecut/detail/text.hpp"
#include "naecut/error.hpp"
#include "naecut/graph.hpp"

namespace naecut {

// Variable ids are 1-based, dense 1..num_vars.
using Var = int;

struct Literal {
  Var var = 0;
  bool negated = false;

  static Literal from_dimacs(std::int64_t lit) {
    return Literal{static_cast<Var>(lit < 0 ? -lit : lit), lit < 0};
  }
  int to_dimacs() const { return negated ? -var : var; }

  friend bool operator==(const Literal&, const Literal&) = default;
};

inline Literal pos(Var v) { return Literal{v, false}; }
inline Literal neg(Var v) { return Literal{v, true}; }

// Two or three literals over distinct variables.
class Clause {
 public:
  Clause(std::initializer_list<Literal> lits) : Clause(std::vector<Literal>(lits)) {}

  explicit Clause(std::vector<Literal> lits) : lits_(std::move(lits)) {
    if (lits_.size() < 2 || lits_.size() > 3)
      throw PreconditionError("clause length " + std::to_string(lits_.size()) + " outside {2,3}");
    for (std::size_t i = 0; i < lits_.size(); ++i) {
      if (lits_[i].var < 1) throw PreconditionError("variable index must be >= 1");
      for (std::size_t j = 0; j < i; ++j)
        if (lits_[i].var == lits_[j].var)
          throw PreconditionError("duplicate variable " + std::to_string(lits_[i].var) + " in clause");
    }
  }

  const std::vector<Literal>& literals() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  const Literal& operator[](std::size_t i) const { return lits_[i]; }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }

  bool contains(Var v) const {
    return std::any_of(lits_.begin(), lits_.end(), [v](const Literal& l) { return l.var == v; });
  }

  friend bool operator==(const Clause&, const Clause&) = default;

 private:
  std::vector<Literal> lits_;
};

class CnfFormula {
 public:
  CnfFormula() = default;

  CnfFormula(int num_vars, std::vector<Clause> clauses)
      : num_vars_(num_vars), clauses_(std::move(clauses)) {
    if (num_vars_ < 0) throw PreconditionError("negative variable count");
    for (const auto& c : clauses_)
      for (const auto& l : c)
        if (l.var > num_vars_)
          throw PreconditionError("variable " + std::to_string(l.var) + " exceeds num_vars " +
                                  std::to_string(num_vars_));
  }

  int num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  const std::vector<Clause>& clauses() const { return clauses_; }
  const Clause& clause(std::size_t i) const { return clauses_.at(i); }

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;

 private:
  int num_vars_ = 0;
  std::vector<Clause> clauses_;
};

// Total truth assignment; values[v-1] is the value of variable v.
struct Assignment {
  std::vector<bool> values;

  Assignment() = default;
  explicit Assignment(std::vector<bool> v) : values(std::move(v)) {}
  static Assignment all_false(int num_vars) {
    return Assignment(std::vector<bool>(static_cast<std::size_t>(num_vars), false));
  }

  int size() const { return static_cast<int>(values.size()); }
  bool operator[](Var v) const { return values.at(static_cast<std::size_t>(v - 1)); }
  void set(Var v, bool value) { values.at(static_cast<std::size_t>(v - 1)) = value; }
  bool eval(const Literal& l) const { return (*this)[l.var] != l.negated; }

  Assignment complement() const {
    Assignment out = *this;
    out.values.flip();
    return out;
  }

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// ---------------------------------------------------------------------------
// DIMACS CNF

inline CnfFormula parse_cnf(std::string_view text) {
  std::optional<std::pair<std::int64_t, std::int64_t>> header;
  std::vector<Clause> clauses;
  std::vector<Literal> pending;
  std::size_t pending_line = 0;

  auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    auto toks = detail::split_ws(lines[i]);
    if (toks.empty() || toks[0] == "c") continue;
    if (toks[0] == "p") {
      if (header) throw ParseError(line_no, "duplicate header");
      if (toks.size() != 4 || toks[1] != "cnf")
        throw ParseError(line_no, "malformed header, expected 'p cnf <n> <m>'");
      auto n = detail::to_int(toks[2], line_no);
      auto m = detail::to_int(toks[3], line_no);
      if (n < 0 || m < 0 || n > (1 << 30)) throw ParseError(line_no, "bad header counts");
      header = {n, m};
      continue;
    }
    if (!header) throw ParseError(line_no, "clause before 'p cnf' header");
    for (auto tok : toks) {
      auto lit = detail::to_int(tok, line_no);
      if (lit == 0) {
        if (pending.empty()) throw ParseError(line_no, "empty clause");
        try {
          clauses.emplace_back(std::move(pending));
        } catch (const PreconditionError& e) {
          throw ParseError(line_no, e.what());
        }
        pending.clear();
        continue;
      }
      if (std::llabs(lit) > header->first)
        throw ParseError(line_no, "variable " + std::to_string(std::llabs(lit)) + " exceeds n = " +
                                      std::to_string(header->first));
      if (pending.empty()) pending_line = line_no;
      pending.push_back(Literal::from_dimacs(lit));
    }
  }
  if (!header) throw ParseError("missing 'p cnf' header");
  if (!pending.empty()) throw ParseError(pending_line, "clause not terminated by 0");
  if (static_cast<std::int64_t>(clauses.size()) != header->second)
    throw ParseError("clause count mismatch: header says " + std::to_string(header->second) +
                     ", found " + std::to_string(clauses.size()));
  return CnfFormula(static_cast<int>(header->first), std::move(clauses));
}

// Trailing comment lines (without the "c " prefix) are appended after the clauses.
inline std::string emit_cnf(const CnfFormula& f, const std::vector<std::string>& trailing_comments = {}) {
  std::ostringstream out;
  out << "p cnf " << f.num_vars() << ' ' << f.num_clauses() << '\n';
  for (const auto& c : f.clauses()) {
    for (const auto& l : c) out << l.to_dimacs() << ' ';
    out << "0\n";
  }
  for (const auto& line : trailing_comments) out << "c " << line << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Predicates

inline bool is_monotone_3sat(const CnfFormula& f) {
  return std::all_of(f.clauses().begin(), f.clauses().end(), [](const Clause& c) {
    return c.size() == 3 && std::none_of(c.begin(), c.end(), [](const Literal& l) { return l.negated; });
  });
}

inline bool clause_nae_satisfied(const Clause& c, const Assignment& a) {
  const bool first = a.eval(c[0]);
  for (std::size_t i = 1; i < c.size(); ++i)
    if (a.eval(c[i]) != first) return true;
  return false;
}

inline bool nae_satisfies(const CnfFormula& f, const Assignment& a) {
  if (a.size() < f.num_vars())
    throw PreconditionError("assignment covers " + std::to_string(a.size()) + " of " +
                            std::to_string(f.num_vars()) + " variables");
  return std::all_of(f.clauses().begin(), f.clauses().end(),
                     [&](const Clause& c) { return clause_nae_satisfied(c, a); });
}

// counts[v-1] = number of clauses containing variable v.
inline std::vector<int> occurrence_counts(const CnfFormula& f) {
  std::vector<int> counts(static_cast<std::size_t>(f.num_vars()), 0);
  for (const auto& c : f.clauses())
    for (const auto& l : c) ++counts[l.var - 1];
  return counts;
}

// ---------------------------------------------------------------------------
// Incidence graph G(f)

enum class IncidenceVariant {
  kCoOccurrence,   // A: variable vertices, edge iff two variables share a clause
  kClauseVertices  // B: A plus one vertex per clause joined to its three variables
};

struct IncidenceGraph {
  Graph graph;
  std::vector<Vertex> clause_vertex;  // variant B only; clause i -> vertex
};

// Variables keep their ids as vertex ids; variant B appends clause vertices
// num_vars+1 .. num_vars+m in clause order.
inline IncidenceGraph incidence_graph(const CnfFormula& f,
                                      IncidenceVariant variant = IncidenceVariant::kCoOccurrence) {
  if (!is_monotone_3sat(f)) throw PreconditionError("incidence graph needs a monotone 3-CNF formula");
  std::vector<Edge> edges;
  for (const auto& c : f.clauses())
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j)
        edges.emplace_back(std::min(c[i].var, c[j].var), std::max(c[i].var, c[j].var));
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  IncidenceGraph out;
  int n = f.num_vars();
  if (variant == IncidenceVariant::kClauseVertices) {
    for (const auto& c : f.clauses()) {
      Vertex cv = ++n;
      out.clause_vertex.push_back(cv);
      for (const auto& l : c) edges.emplace_back(l.var, cv);
    }
  }
  out.graph = Graph(n, std::move(edges));
  return out;
}

}  // namespace naecut
