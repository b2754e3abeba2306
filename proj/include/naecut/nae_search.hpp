#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "naecut/error.hpp"

namespace naecut {

// Complete search for not-all-equal constraints over boolean variables.
//
// Each constraint is a list of 2 or 3 signed DIMACS literals and is satisfied
// when its literal values are not all equal. The search combines
//   - propagation: when all but one literal of a constraint are assigned and
//     equal, the last literal must take the opposite value,
//   - dynamic decomposition: unassigned variables linked by open constraints
//     are split into independent components, each solved on its own,
//   - a cache of component outcomes keyed by the component's variables and the
//     fixed literal values of every open constraint touching it.
// It is exact; the node budget bounds decisions, and exhausting it throws
// BudgetExceeded rather than reporting "unsatisfiable".
class NaeSearch {
 public:
  NaeSearch(int num_vars, const std::vector<std::vector<int>>& constraints, std::uint64_t max_nodes)
      : n_(num_vars), max_nodes_(max_nodes) {
    val_.assign(static_cast<std::size_t>(n_), kUnset);
    occ_.resize(static_cast<std::size_t>(n_));
    stamp_.assign(static_cast<std::size_t>(n_), 0);
    parent_.resize(static_cast<std::size_t>(n_));
    for (const auto& c : constraints) {
      if (c.size() < 2 || c.size() > 3) throw PreconditionError("constraint arity must be 2 or 3");
      Constraint k;
      k.size = static_cast<int>(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) {
        const int var = std::abs(c[i]) - 1;
        if (c[i] == 0 || var >= n_) throw PreconditionError("constraint literal out of range");
        k.var[i] = var;
        k.neg[i] = c[i] < 0;
      }
      const int id = static_cast<int>(cons_.size());
      cons_.push_back(k);
      for (int i = 0; i < k.size; ++i) occ_[k.var[i]].push_back(id);
    }
  }

  std::uint64_t nodes() const { return nodes_; }

  // The lexicographically smallest satisfying assignment (variable 1 most
  // significant, false < true), or nullopt if none exists.
  std::optional<std::vector<bool>> lex_smallest() {
    trail_.clear();
    std::fill(val_.begin(), val_.end(), kUnset);
    if (!satisfiable_rest()) return std::nullopt;
    for (int v = 0; v < n_; ++v) {
      if (val_[v] != kUnset) continue;
      const std::size_t mark = trail_.size();
      assign(v, 0);
      if (propagate(mark) && satisfiable_rest()) continue;
      undo(mark);
      assign(v, 1);
      if (!propagate(mark))
        throw std::logic_error("search invariant broken: both branches failed after a satisfiable check");
    }
    std::vector<bool> out(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) out[v] = val_[v] == 1;
    return out;
  }

 private:
  static constexpr std::int8_t kUnset = -1;

  struct Constraint {
    int size = 0;
    std::array<int, 3> var{};
    std::array<bool, 3> neg{};
  };

  struct CacheEntry {
    bool sat = false;
    std::vector<std::int8_t> values;  // aligned with the sorted component variables
  };

  struct KeyHash {
    std::size_t operator()(const std::vector<int>& key) const noexcept {
      std::uint64_t h = 1469598103934665603ull;
      for (int x : key) {
        h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x));
        h *= 1099511628211ull;
      }
      return static_cast<std::size_t>(h);
    }
  };

  int lit_value(const Constraint& c, int i) const {
    const auto v = val_[c.var[i]];
    if (v == kUnset) return kUnset;
    return c.neg[i] ? 1 - v : v;
  }

  // Satisfied: both a true and a false literal present.
  bool satisfied(const Constraint& c) const {
    bool t = false, f = false;
    for (int i = 0; i < c.size; ++i) {
      const int lv = lit_value(c, i);
      if (lv == 1) t = true;
      if (lv == 0) f = true;
    }
    return t && f;
  }

  // Open: not yet satisfied and still has an unassigned literal.
  bool open(const Constraint& c) const {
    if (satisfied(c)) return false;
    for (int i = 0; i < c.size; ++i)
      if (val_[c.var[i]] == kUnset) return true;
    return false;
  }

  void assign(int v, int value) {
    val_[v] = static_cast<std::int8_t>(value);
    trail_.push_back(v);
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      val_[trail_.back()] = kUnset;
      trail_.pop_back();
    }
  }

  // Propagates every assignment on the trail from position `from`.
  bool propagate(std::size_t from) {
    for (std::size_t head = from; head < trail_.size(); ++head) {
      const int v = trail_[head];
      for (int id : occ_[v]) {
        const auto& c = cons_[id];
        int ones = 0, zeros = 0, free_slot = -1, free_count = 0;
        for (int i = 0; i < c.size; ++i) {
          const int lv = lit_value(c, i);
          if (lv == 1) ++ones;
          else if (lv == 0) ++zeros;
          else {
            ++free_count;
            free_slot = i;
          }
        }
        if (ones > 0 && zeros > 0) continue;
        if (free_count == 0) return false;
        if (free_count == 1) {
          const int want_lit = ones > 0 ? 0 : 1;
          assign(c.var[free_slot], c.neg[free_slot] ? 1 - want_lit : want_lit);
        }
      }
    }
    return true;
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool constrained(int v) const {
    return std::any_of(occ_[v].begin(), occ_[v].end(), [&](int id) { return open(cons_[id]); });
  }

  // Splits the unassigned variables of `vars` that still sit in an open
  // constraint into connected components. Variables with no open constraint
  // are free and left unassigned. Components come out ordered by smallest variable.
  std::vector<std::vector<int>> components(const std::vector<int>& vars) {
    ++epoch_;
    std::vector<int> live;
    for (int v : vars)
      if (val_[v] == kUnset && constrained(v)) {
        stamp_[v] = epoch_;
        parent_[v] = v;
        live.push_back(v);
      }
    for (int v : live)
      for (int id : occ_[v]) {
        const auto& c = cons_[id];
        if (!open(c)) continue;
        for (int i = 0; i < c.size; ++i) {
          const int w = c.var[i];
          if (w == v || val_[w] != kUnset || stamp_[w] != epoch_) continue;
          const int a = find(v), b = find(w);
          if (a != b) parent_[std::max(a, b)] = std::min(a, b);
        }
      }
    std::vector<std::vector<int>> out;
    std::unordered_map<int, std::size_t> slot;
    std::sort(live.begin(), live.end());
    for (int v : live) {
      const int r = find(v);
      auto [it, fresh] = slot.emplace(r, out.size());
      if (fresh) out.emplace_back();
      out[it->second].push_back(v);
    }
    return out;
  }

  std::vector<int> component_key(const std::vector<int>& comp) {
    std::vector<int> key(comp.begin(), comp.end());
    key.push_back(-1);
    std::vector<int> ids;
    for (int v : comp)
      for (int id : occ_[v])
        if (open(cons_[id])) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (int id : ids) {
      key.push_back(id);
      const auto& c = cons_[id];
      int code = 0;
      for (int i = 0; i < c.size; ++i) code = code * 3 + (lit_value(c, i) + 1);
      key.push_back(code);
    }
    return key;
  }

  int pick_branch_var(const std::vector<int>& comp) const {
    int best = comp.front();
    long best_score = -1;
    for (int v : comp) {
      long score = 0;
      for (int id : occ_[v]) {
        const auto& c = cons_[id];
        if (!open(c)) continue;
        int assigned = 0;
        for (int i = 0; i < c.size; ++i)
          if (val_[c.var[i]] != kUnset) ++assigned;
        score += 1 + 4L * assigned + (c.size == 2 ? 4 : 0);
      }
      if (score > best_score) {
        best_score = score;
        best = v;
      }
    }
    return best;
  }

  // comp: unassigned, connected, state already propagated without conflict.
  // On success the component stays assigned.
  bool solve_component(const std::vector<int>& comp) {
    auto key = component_key(comp);
    if (auto it = cache_.find(key); it != cache_.end()) {
      if (!it->second.sat) return false;
      for (std::size_t i = 0; i < comp.size(); ++i)
        if (it->second.values[i] != kUnset) assign(comp[i], it->second.values[i]);
      return true;
    }
    const int v = pick_branch_var(comp);
    for (int value : {0, 1}) {
      if (++nodes_ > max_nodes_)
        throw BudgetExceeded("exact search exceeded " + std::to_string(max_nodes_) + " nodes");
      const std::size_t mark = trail_.size();
      assign(v, value);
      bool ok = propagate(mark);
      if (ok) {
        for (const auto& sub : components(comp)) {
          if (!solve_component(sub)) {
            ok = false;
            break;
          }
        }
      }
      if (ok) {
        CacheEntry e{true, {}};
        for (int w : comp) e.values.push_back(val_[w]);
        cache_.emplace(std::move(key), std::move(e));
        return true;
      }
      undo(mark);
    }
    cache_.emplace(std::move(key), CacheEntry{false, {}});
    return false;
  }

  // Whether the current partial assignment extends to a full solution.
  // Leaves the state exactly as it found it.
  bool satisfiable_rest() {
    const std::size_t mark = trail_.size();
    std::vector<int> all(static_cast<std::size_t>(n_));
    std::iota(all.begin(), all.end(), 0);
    bool ok = true;
    for (const auto& comp : components(all)) {
      if (!solve_component(comp)) {
        ok = false;
        break;
      }
    }
    undo(mark);
    return ok;
  }

  int n_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  std::vector<Constraint> cons_;
  std::vector<std::vector<int>> occ_;
  std::vector<std::int8_t> val_;
  std::vector<int> trail_;
  std::vector<int> stamp_;
  std::vector<int> parent_;
  int epoch_ = 0;
  std::unordered_map<std::vector<int>, CacheEntry, KeyHash> cache_;
};

}  // namespace naecut
