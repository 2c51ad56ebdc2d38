#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dkcore/graph.hpp"

namespace dkcore {

using Coreness = std::uint32_t;

/// Coreness value per node, indexed by node id.
class CorenessMap {
 public:
  CorenessMap() = default;
  explicit CorenessMap(std::vector<Coreness> values) : values_(std::move(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  Coreness operator[](NodeId u) const { return values_[u]; }
  Coreness& operator[](NodeId u) { return values_[u]; }
  const std::vector<Coreness>& values() const noexcept { return values_; }

  friend bool operator==(const CorenessMap&, const CorenessMap&) = default;

 private:
  std::vector<Coreness> values_;
};

/// Exact coreness by bucket peeling in O(N + M).
///
/// Nodes are kept in an array sorted by residual degree with one bucket per
/// degree value; removing a node moves each higher-degree neighbor one
/// bucket down in O(1).
CorenessMap coreness_exact(const Graph& g);

struct LocalityVerdict {
  std::vector<NodeId> violations;  // ascending
  bool ok() const noexcept { return violations.empty(); }
};

/// Checks the local characterization of coreness at every node u with
/// c(u) = k: at least k neighbors have c >= k, and at most k neighbors have
/// c >= k + 1. Throws std::invalid_argument if c does not cover g.
LocalityVerdict verify_locality(const Graph& g, const CorenessMap& c);

struct DecompositionStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  Coreness k_max = 0;
  std::uint64_t k_sum = 0;  // k_avg = k_sum / nodes, kept exact
  std::size_t delta_min = 0;
  std::size_t delta_max = 0;
  std::size_t min_degree_count = 0;  // K

  double k_avg() const noexcept {
    return nodes == 0 ? 0.0 : static_cast<double>(k_sum) / static_cast<double>(nodes);
  }
  /// k_avg rounded half-up to two decimals, computed in integers.
  std::string k_avg_text() const;
};

DecompositionStats stats(const Graph& g, const CorenessMap& c);

/// "# N=<n> M=<m> k_max=<k>" followed by "label<TAB>coreness" per node in id
/// order.
void write_coreness(std::ostream& out, const Graph& g, const CorenessMap& c);

/// Reads the format written by write_coreness, resolving labels against g.
/// Throws ParseError on malformed lines, unknown or repeated nodes, and
/// std::invalid_argument if some node of g is missing.
CorenessMap read_coreness(std::istream& in, const Graph& g);

}  // namespace dkcore
