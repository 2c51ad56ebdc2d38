#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dkcore/graph.hpp"
#include "dkcore/oracle.hpp"

namespace dkcore {

using HostId = std::uint32_t;

/// Node-to-host placement. Hosts are numbered [0, num_hosts()).
class Assignment {
 public:
  /// Node u goes to host u mod hosts. Throws std::domain_error if hosts == 0.
  static Assignment modulo(std::size_t nodes, std::size_t hosts);
  /// Arbitrary placement; every entry must be < hosts.
  static Assignment from_hosts(std::vector<HostId> host_of, std::size_t hosts);

  std::size_t num_hosts() const noexcept { return members_.size(); }
  std::size_t num_nodes() const noexcept { return host_of_.size(); }
  HostId host_of(NodeId u) const { return host_of_[u]; }
  /// Position of u inside members(host_of(u)).
  std::size_t local_index(NodeId u) const { return local_index_[u]; }
  /// Nodes owned by x, ascending.
  const std::vector<NodeId>& members(HostId x) const { return members_[x]; }

 private:
  std::vector<HostId> host_of_;
  std::vector<std::size_t> local_index_;
  std::vector<std::vector<NodeId>> members_;
};

struct BatchEntry {
  NodeId node;
  Coreness estimate;

  friend bool operator==(const BatchEntry&, const BatchEntry&) = default;
};

struct UpdateBatch {
  HostId origin;
  std::vector<BatchEntry> entries;
};

/// One batch and the hosts it is sent to.
struct Dispatch {
  std::vector<HostId> destinations;
  UpdateBatch batch;
};

/// What a host sends at one step: S, the set of changed owned estimates,
/// and the batches carrying (parts of) it to neighbor hosts. `dispatches`
/// can be empty while S is not, e.g. with no neighbor hosts.
struct Outbox {
  std::vector<BatchEntry> emitted;
  std::vector<Dispatch> dispatches;

  bool empty() const noexcept { return emitted.empty(); }
};

enum class Policy {
  broadcast,  // one batch of all changed estimates to every neighbor host
  p2p,        // per neighbor host, only estimates of nodes adjacent to it
};

/// State of one host in the one-to-many protocol.
///
/// Holds estimates for its own nodes and for frontier nodes (owned
/// elsewhere, adjacent to an owned node). The graph and the assignment must
/// outlive the state.
class HostState {
 public:
  /// Owned estimates start at the degree, frontier estimates at +infinity.
  /// No improvement is applied yet; see initialize().
  HostState(HostId id, const Graph& g, const Assignment& assignment);

  /// Host initialization: runs improve_estimate() once and emits every
  /// owned estimate. Under p2p each neighbor host only receives the nodes
  /// adjacent to it. Clears all changed flags.
  Outbox initialize(Policy policy);

  /// Inner fixpoint: recomputes owned estimates in ascending id order,
  /// pass after pass, until a pass lowers nothing. Returns the nodes whose
  /// estimate decreased (ascending) and flags them as changed.
  std::vector<NodeId> improve_estimate();

  /// Lowers known estimates entry-wise (never raises), then runs
  /// improve_estimate(). Entries for nodes this host does not track are
  /// skipped and counted in ignored_entries(); a batch from this host itself
  /// is ignored.
  void on_receive(const UpdateBatch& batch);

  /// End-of-round step: batches for the changed owned nodes, per policy.
  /// Clears all changed flags.
  Outbox round_emit(Policy policy);

  HostId id() const noexcept { return id_; }
  const std::vector<NodeId>& owned() const { return assignment_->members(id_); }
  /// Current estimate of an owned or frontier node; nullopt means +infinity
  /// or an untracked node.
  std::optional<Coreness> estimate(NodeId u) const;
  Coreness owned_estimate(NodeId u) const { return owned_est_[assignment_->local_index(u)]; }
  bool changed(NodeId u) const { return changed_[assignment_->local_index(u)]; }

  /// Neighbor hosts mapped to the owned nodes having an edge into them.
  const std::map<HostId, std::vector<NodeId>>& frontier_links() const noexcept { return frontier_links_; }
  std::vector<HostId> neighbor_hosts() const;
  std::uint64_t ignored_entries() const noexcept { return ignored_entries_; }

 private:
  bool owns(NodeId u) const { return assignment_->host_of(u) == id_; }
  Coreness lookup(NodeId v) const;
  /// Marks owned neighbors of u for recomputation.
  void touch_neighbors(NodeId u);
  Outbox dispatch(Policy policy, const std::vector<NodeId>& nodes);

  HostId id_;
  const Graph* graph_;
  const Assignment* assignment_;
  std::vector<Coreness> owned_est_;
  std::vector<char> changed_;
  std::vector<char> dirty_;
  std::unordered_map<NodeId, Coreness> frontier_est_;
  std::map<HostId, std::vector<NodeId>> frontier_links_;
  std::uint64_t ignored_entries_ = 0;
  std::vector<std::size_t> counts_;
};

/// Trace line "round origin node estimate" per entry.
void write_batch(std::ostream& out, std::size_t round, const UpdateBatch& batch);

}  // namespace dkcore
