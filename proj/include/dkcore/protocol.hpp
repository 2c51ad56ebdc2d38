#pragma once

#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "dkcore/graph.hpp"
#include "dkcore/oracle.hpp"

namespace dkcore {

/// Estimate value standing for "nothing heard yet" (+infinity).
inline constexpr Coreness kInfinity = std::numeric_limits<Coreness>::max();

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest i in [1, k] such that at least i of the estimates are >= i.
///
/// Counting scheme: bucket each estimate at min(estimate, k), turn the
/// buckets into suffix sums, and scan down from k. The result is 1 when no
/// larger i qualifies. `counts` is scratch space reused across calls.
/// Throws std::domain_error if k < 1.
template <typename Estimates>
Coreness compute_index(const Estimates& estimates, Coreness k, std::vector<std::size_t>& counts) {
  if (k < 1) throw std::domain_error("compute_index needs a current estimate >= 1");
  counts.assign(static_cast<std::size_t>(k) + 1, 0);
  for (Coreness e : estimates) ++counts[e < k ? e : k];
  for (Coreness i = k; i >= 2; --i) counts[i - 1] += counts[i];
  Coreness i = k;
  while (i > 1 && counts[i] < i) --i;
  return i;
}

Coreness compute_index(std::span<const Coreness> estimates, Coreness k);

/// Estimate notification ⟨sender, estimate⟩.
struct Message {
  NodeId sender;
  Coreness estimate;

  friend bool operator==(const Message&, const Message&) = default;
};

/// One message addressed to several neighbors.
struct Emission {
  Message message;
  std::vector<NodeId> recipients;

  bool empty() const noexcept { return recipients.empty(); }
};

enum class SendFilter {
  plain,      // changed estimates go to every neighbor
  optimized,  // skip neighbors already known to sit at or below the new value
};

/// State of one node in the one-to-one protocol.
///
/// Neighbor estimates are stored positionally against the graph's sorted
/// adjacency list, with kInfinity for neighbors not heard from. The graph
/// must outlive the state.
class NodeState {
 public:
  /// Initial state: core = degree, no neighbor estimates, not changed.
  NodeState(NodeId id, const Graph& g);

  /// The initialization broadcast ⟨id, degree⟩ to every neighbor. Records
  /// the sent value per neighbor for the optimized filter.
  Emission initial_emission();

  /// Absorbs one message. Stale messages (estimate >= stored) leave the
  /// state untouched. Returns true if the core estimate decreased. Throws
  /// ProtocolError if the sender is not a neighbor.
  bool on_receive(const Message& m);

  /// End-of-round step: if the estimate changed since the last emission,
  /// emits it and clears the flag.
  Emission round_emit(SendFilter filter);

  NodeId id() const noexcept { return id_; }
  Coreness core() const noexcept { return core_; }
  bool changed() const noexcept { return changed_; }
  std::size_t degree() const noexcept { return neighbors_.size(); }
  std::span<const NodeId> neighbors() const noexcept { return neighbors_; }

  /// Last estimate received from v; nullopt means +infinity.
  std::optional<Coreness> estimate_of(NodeId v) const;

 private:
  std::optional<std::size_t> slot_of(NodeId v) const;

  NodeId id_;
  std::span<const NodeId> neighbors_;
  std::vector<Coreness> est_;
  std::vector<Coreness> sent_floor_;
  Coreness core_;
  bool changed_ = false;
};

}  // namespace dkcore
