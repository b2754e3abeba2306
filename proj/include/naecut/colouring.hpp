#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "naecut/detail/text.hpp"
#include "naecut/error.hpp"
#include "naecut/graph.hpp"

namespace naecut {

struct Colouring {
  int k = 0;
  std::vector<int> colours;  // colours[v-1] in 1..k

  int of(Vertex v) const { return colours.at(static_cast<std::size_t>(v - 1)); }

  friend bool operator==(const Colouring&, const Colouring&) = default;
};

inline constexpr std::uint64_t kDefaultColouringNodes = 10'000'000;

inline bool verify_colouring(const Graph& g, const Colouring& c) {
  if (c.colours.size() != static_cast<std::size_t>(g.num_vertices())) return false;
  for (int col : c.colours)
    if (col < 1 || col > c.k) return false;
  for (auto [u, v] : g.edges())
    if (c.of(u) == c.of(v)) return false;
  return true;
}

// Exact backtracking k-colouring. Vertices in id order, colours in increasing
// order, vertex 1 pinned to colour 1. Throws BudgetExceeded once more than
// max_nodes colour assignments have been tried.
inline std::optional<Colouring> find_k_colouring(const Graph& g, int k,
                                                 std::uint64_t max_nodes = kDefaultColouringNodes) {
  if (k < 1) throw PreconditionError("colour count must be at least 1");
  const int n = g.num_vertices();
  std::vector<int> colour(static_cast<std::size_t>(n) + 1, 0);
  std::uint64_t nodes = 0;

  auto fits = [&](Vertex v, int col) {
    for (Vertex w : g.neighbours(v))
      if (w < v && colour[w] == col) return false;
    return true;
  };

  Vertex v = 1;
  while (v >= 1 && v <= n) {
    const int limit = (v == 1) ? 1 : k;
    int col = colour[v] + 1;
    while (col <= limit && !fits(v, col)) ++col;
    if (col <= limit) {
      if (++nodes > max_nodes)
        throw BudgetExceeded("colouring search exceeded " + std::to_string(max_nodes) + " nodes");
      colour[v] = col;
      ++v;
    } else {
      colour[v] = 0;
      --v;
    }
  }
  if (v < 1) return std::nullopt;
  Colouring out{k, std::vector<int>(colour.begin() + 1, colour.end())};
  return out;
}

// Certificate: "k <k>" then "<vertex> <colour>" lines.
inline std::string emit_colouring(const Colouring& c) {
  std::ostringstream out;
  out << "k " << c.k << '\n';
  for (std::size_t i = 0; i < c.colours.size(); ++i) out << (i + 1) << ' ' << c.colours[i] << '\n';
  return out.str();
}

// Every vertex 1..num_vertices must be listed exactly once.
inline Colouring parse_colouring(std::string_view text, int num_vertices) {
  Colouring c;
  bool have_k = false;
  c.colours.assign(static_cast<std::size_t>(num_vertices), 0);
  auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    auto toks = detail::split_ws(lines[i]);
    if (toks.empty() || toks[0] == "c") continue;
    if (toks[0] == "k") {
      if (have_k || toks.size() != 2) throw ParseError(line_no, "malformed 'k' line");
      auto k = detail::to_int(toks[1], line_no);
      if (k < 1 || k > (1 << 30)) throw ParseError(line_no, "bad colour count");
      c.k = static_cast<int>(k);
      have_k = true;
      continue;
    }
    if (!have_k) throw ParseError(line_no, "expected 'k <k>' header first");
    if (toks.size() != 2) throw ParseError(line_no, "expected '<vertex> <colour>'");
    auto v = detail::to_int(toks[0], line_no);
    auto col = detail::to_int(toks[1], line_no);
    if (v < 1 || v > num_vertices) throw ParseError(line_no, "vertex out of range");
    if (c.colours[v - 1] != 0) throw ParseError(line_no, "vertex listed twice");
    if (col < 1 || col > (1 << 30)) throw ParseError(line_no, "bad colour");
    c.colours[v - 1] = static_cast<int>(col);
  }
  if (!have_k) throw ParseError("missing 'k' header");
  for (std::size_t i = 0; i < c.colours.size(); ++i)
    if (c.colours[i] == 0) throw ParseError("vertex " + std::to_string(i + 1) + " has no colour");
  return c;
}

}  // namespace naecut
