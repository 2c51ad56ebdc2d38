#pragma once

// Test-only reference implementations. They share no code with the library
// paths they check.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <set>
#include <utility>
#include <vector>

#include "dkcore/graph.hpp"
#include "dkcore/oracle.hpp"

namespace dkcore::testing {

enum class TieOrder { lowest_id, highest_id };

/// Quadratic peeling: repeatedly removes a node of minimum residual degree;
/// its coreness is the running maximum of removal degrees.
inline CorenessMap naive_peeling(const Graph& g, TieOrder order = TieOrder::lowest_id) {
  const std::size_t n = g.num_nodes();
  std::vector<std::size_t> residual(n);
  std::vector<bool> removed(n, false);
  for (NodeId u = 0; u < n; ++u) residual[u] = g.degree(u);
  std::vector<Coreness> core(n, 0);
  std::size_t level = 0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t u = order == TieOrder::lowest_id ? i : n - 1 - i;
      if (removed[u]) continue;
      if (best == n || residual[u] < residual[best]) best = u;
    }
    level = std::max(level, residual[best]);
    core[best] = static_cast<Coreness>(level);
    removed[best] = true;
    for (NodeId v : g.neighbors(static_cast<NodeId>(best))) {
      if (!removed[v]) --residual[v];
    }
  }
  return CorenessMap(std::move(core));
}

/// Definition-level coreness: the largest k such that u survives iterated
/// deletion of nodes with fewer than k remaining neighbors.
inline CorenessMap coreness_by_definition(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<Coreness> core(n, 0);
  for (std::size_t k = 1;; ++k) {
    std::vector<bool> alive(n, true);
    bool changed = true;
    while (changed) {
      changed = false;
      for (NodeId u = 0; u < n; ++u) {
        if (!alive[u]) continue;
        std::size_t live = 0;
        for (NodeId v : g.neighbors(u)) live += alive[v] ? 1 : 0;
        if (live < k) {
          alive[u] = false;
          changed = true;
        }
      }
    }
    bool any = false;
    for (NodeId u = 0; u < n; ++u) {
      if (alive[u]) {
        core[u] = static_cast<Coreness>(k);
        any = true;
      }
    }
    if (!any) break;
  }
  return CorenessMap(std::move(core));
}

inline constexpr Coreness kInf = std::numeric_limits<Coreness>::max();

/// max{ i in [1, k] : #{ e : e >= i } >= i }, or 1 if none.
inline Coreness brute_index(const std::vector<Coreness>& estimates, Coreness k) {
  Coreness best = 1;
  for (Coreness i = 1; i <= k; ++i) {
    std::size_t count = 0;
    for (Coreness e : estimates) count += e >= i ? 1 : 0;
    if (count >= i) best = i;
  }
  return best;
}

/// Labels 1..6 of the six-node example map to ids 0..5.
inline Graph example_graph() {
  const std::vector<Edge> edges = {{0, 1}, {1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}, {4, 5}};
  return Graph::from_edges(6, edges);
}

/// The worst-case construction enumerated pair by pair over 1-based labels.
inline std::set<std::pair<std::size_t, std::size_t>> worst_case_pairs(std::size_t n) {
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 1; a <= n; ++a) {
    for (std::size_t b = a + 1; b <= n; ++b) {
      const bool hub = b == n && a != n - 3;
      const bool successor = b == a + 1 && a <= n - 2;
      const bool extra = a == n - 3 && b == n - 1;
      if (hub || successor || extra) pairs.emplace(a, b);
    }
  }
  return pairs;
}

inline bool symmetric_and_simple(const Graph& g) {
  std::size_t degree_sum = 0;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    const auto adj = g.neighbors(u);
    degree_sum += adj.size();
    for (std::size_t i = 0; i < adj.size(); ++i) {
      if (adj[i] == u) return false;
      if (i > 0 && adj[i - 1] >= adj[i]) return false;
      if (!g.has_edge(adj[i], u)) return false;
    }
  }
  return degree_sum == 2 * g.num_edges();
}

}  // namespace dkcore::testing
