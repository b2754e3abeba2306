#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "naecut/detail/text.hpp"
#include "naecut/error.hpp"

namespace naecut {

// Vertex ids are 1-based.
using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;
using Triangle = std::array<Vertex, 3>;

// Simple undirected graph. Immutable after construction; edges are stored
// normalized (u < v) and sorted, neighbour lists are sorted.
class Graph {
 public:
  Graph() = default;

  Graph(int num_vertices, std::vector<Edge> edges) : n_(num_vertices) {
    if (num_vertices < 0) throw PreconditionError("negative vertex count");
    for (auto& [u, v] : edges) {
      if (u == v) throw PreconditionError("self-loop on vertex " + std::to_string(u));
      if (u < 1 || v < 1 || u > n_ || v > n_)
        throw PreconditionError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                ") out of range 1.." + std::to_string(n_));
      if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end())
      throw PreconditionError("parallel edge (" + std::to_string(dup->first) + "," +
                              std::to_string(dup->second) + ")");
    edges_ = std::move(edges);
    adj_.assign(static_cast<std::size_t>(n_) + 1, {});
    for (auto [u, v] : edges_) {
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (auto& list : adj_) std::sort(list.begin(), list.end());
  }

  int num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const Vertex> neighbours(Vertex v) const { return adj_.at(v); }
  int degree(Vertex v) const { return static_cast<int>(adj_.at(v).size()); }

  bool adjacent(Vertex u, Vertex v) const {
    if (u < 1 || v < 1 || u > n_ || v > n_) return false;
    const auto& list = adj_[u];
    return std::binary_search(list.begin(), list.end(), v);
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
};

// Bipartition of the vertex set. Valid cuts are checked by verify_cut_triangle_free,
// so a Cut value itself may be malformed (e.g. parsed from an untrusted file).
struct Cut {
  std::vector<Vertex> side_a;
  std::vector<Vertex> side_b;

  // in_a[v-1] tells whether vertex v belongs to side A.
  static Cut from_membership(const std::vector<bool>& in_a) {
    Cut cut;
    for (std::size_t i = 0; i < in_a.size(); ++i)
      (in_a[i] ? cut.side_a : cut.side_b).push_back(static_cast<Vertex>(i + 1));
    return cut;
  }

  Cut swapped() const { return Cut{side_b, side_a}; }

  friend bool operator==(const Cut&, const Cut&) = default;
};

// DIMACS-col style: "p edge <n> <m>" then "e <u> <v>" lines.
inline Graph parse_graph(std::string_view text) {
  std::optional<std::pair<std::int64_t, std::int64_t>> header;
  std::vector<Edge> edges;
  auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    auto toks = detail::split_ws(lines[i]);
    if (toks.empty() || toks[0] == "c") continue;
    if (toks[0] == "p") {
      if (header) throw ParseError(line_no, "duplicate header");
      if (toks.size() != 4 || (toks[1] != "edge" && toks[1] != "col"))
        throw ParseError(line_no, "malformed header, expected 'p edge <n> <m>'");
      auto n = detail::to_int(toks[2], line_no);
      auto m = detail::to_int(toks[3], line_no);
      if (n < 0 || m < 0 || n > (1 << 30)) throw ParseError(line_no, "bad header counts");
      header = {n, m};
      continue;
    }
    if (toks[0] == "e") {
      if (!header) throw ParseError(line_no, "edge before header");
      if (toks.size() != 3) throw ParseError(line_no, "expected 'e <u> <v>'");
      auto u = detail::to_int(toks[1], line_no);
      auto v = detail::to_int(toks[2], line_no);
      if (u == v) throw ParseError(line_no, "self-loop on vertex " + std::to_string(u));
      if (u < 1 || v < 1 || u > header->first || v > header->first)
        throw ParseError(line_no, "vertex out of range");
      edges.emplace_back(static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v)));
      continue;
    }
    throw ParseError(line_no, "unexpected line");
  }
  if (!header) throw ParseError("missing 'p edge' header");
  if (static_cast<std::int64_t>(edges.size()) != header->second)
    throw ParseError("edge count mismatch: header says " + std::to_string(header->second) +
                     ", found " + std::to_string(edges.size()));
  try {
    return Graph(static_cast<int>(header->first), std::move(edges));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

inline std::string emit_graph(const Graph& g) {
  std::ostringstream out;
  out << "p edge " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
  return out.str();
}

// All 3-cliques as (u < v < w), lexicographically sorted. Edge iteration with
// sorted-neighbour intersection restricted to w > v.
inline std::vector<Triangle> enumerate_triangles(const Graph& g) {
  std::vector<Triangle> out;
  for (auto [u, v] : g.edges()) {
    auto nu = g.neighbours(u);
    auto nv = g.neighbours(v);
    auto i = std::upper_bound(nu.begin(), nu.end(), v);
    auto j = std::upper_bound(nv.begin(), nv.end(), v);
    while (i != nu.end() && j != nv.end()) {
      if (*i < *j) {
        ++i;
      } else if (*j < *i) {
        ++j;
      } else {
        out.push_back({u, v, *i});
        ++i;
        ++j;
      }
    }
  }
  return out;
}

// Number of triangles containing each vertex; index v-1.
inline std::vector<int> triangle_counts(const Graph& g) {
  std::vector<int> counts(static_cast<std::size_t>(g.num_vertices()), 0);
  for (const auto& t : enumerate_triangles(g))
    for (Vertex v : t) ++counts[v - 1];
  return counts;
}

inline int max_degree(const Graph& g) {
  int best = 0;
  for (Vertex v = 1; v <= g.num_vertices(); ++v) best = std::max(best, g.degree(v));
  return best;
}

namespace detail {

// side[v-1]: 0 = side A, 1 = side B; nullopt if the cut is not a partition of V.
inline std::optional<std::vector<int>> side_labels(const Graph& g, const Cut& cut) {
  std::vector<int> side(static_cast<std::size_t>(g.num_vertices()), -1);
  auto place = [&](const std::vector<Vertex>& vs, int label) {
    for (Vertex v : vs) {
      if (v < 1 || v > g.num_vertices() || side[v - 1] != -1) return false;
      side[v - 1] = label;
    }
    return true;
  };
  if (!place(cut.side_a, 0) || !place(cut.side_b, 1)) return std::nullopt;
  if (std::find(side.begin(), side.end(), -1) != side.end()) return std::nullopt;
  return side;
}

}  // namespace detail

// First triangle lying wholly inside one side, if any. Assumes the cut is a partition.
inline std::optional<Triangle> find_monochromatic_triangle(const Graph& g, const Cut& cut) {
  auto side = detail::side_labels(g, cut);
  if (!side) return std::nullopt;
  for (const auto& t : enumerate_triangles(g)) {
    const auto& s = *side;
    if (s[t[0] - 1] == s[t[1] - 1] && s[t[1] - 1] == s[t[2] - 1]) return t;
  }
  return std::nullopt;
}

// True iff the cut partitions V into two non-empty sides and neither side
// contains a triangle of g.
inline bool verify_cut_triangle_free(const Graph& g, const Cut& cut) {
  if (cut.side_a.empty() || cut.side_b.empty()) return false;
  if (!detail::side_labels(g, cut)) return false;
  return !find_monochromatic_triangle(g, cut).has_value();
}

}  // namespace naecut
