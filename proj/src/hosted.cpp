#include "dkcore/hosted.hpp"

#include <algorithm>
#include <iterator>
#include <ostream>
#include <ranges>

#include "dkcore/protocol.hpp"

namespace dkcore {

Assignment Assignment::modulo(std::size_t nodes, std::size_t hosts) {
  if (hosts == 0) throw std::domain_error("host count must be at least 1");
  std::vector<HostId> host_of(nodes);
  for (std::size_t u = 0; u < nodes; ++u) host_of[u] = static_cast<HostId>(u % hosts);
  return from_hosts(std::move(host_of), hosts);
}

Assignment Assignment::from_hosts(std::vector<HostId> host_of, std::size_t hosts) {
  if (hosts == 0) throw std::domain_error("host count must be at least 1");
  Assignment a;
  a.members_.resize(hosts);
  a.local_index_.resize(host_of.size());
  for (std::size_t u = 0; u < host_of.size(); ++u) {
    if (host_of[u] >= hosts) throw std::out_of_range("node assigned to a nonexistent host");
    auto& members = a.members_[host_of[u]];
    a.local_index_[u] = members.size();
    members.push_back(static_cast<NodeId>(u));
  }
  a.host_of_ = std::move(host_of);
  return a;
}

HostState::HostState(HostId id, const Graph& g, const Assignment& assignment)
    : id_(id), graph_(&g), assignment_(&assignment) {
  if (assignment.num_nodes() != g.num_nodes()) throw std::invalid_argument("assignment does not cover the graph");
  if (id >= assignment.num_hosts()) throw std::out_of_range("host id outside the assignment");
  const auto& mine = owned();
  owned_est_.reserve(mine.size());
  for (NodeId u : mine) owned_est_.push_back(static_cast<Coreness>(g.degree(u)));
  changed_.assign(mine.size(), 0);
  dirty_.assign(mine.size(), 1);

  std::vector<HostId> hosts;
  for (NodeId u : mine) {
    hosts.clear();
    for (NodeId v : g.neighbors(u)) {
      const HostId y = assignment.host_of(v);
      if (y == id_) continue;
      frontier_est_.emplace(v, kInfinity);
      hosts.push_back(y);
    }
    std::sort(hosts.begin(), hosts.end());
    hosts.erase(std::unique(hosts.begin(), hosts.end()), hosts.end());
    for (HostId y : hosts) frontier_links_[y].push_back(u);
  }
}

std::vector<HostId> HostState::neighbor_hosts() const {
  std::vector<HostId> result;
  result.reserve(frontier_links_.size());
  for (const auto& entry : frontier_links_) result.push_back(entry.first);
  return result;
}

Coreness HostState::lookup(NodeId v) const {
  if (owns(v)) return owned_est_[assignment_->local_index(v)];
  const auto it = frontier_est_.find(v);
  return it == frontier_est_.end() ? kInfinity : it->second;
}

std::optional<Coreness> HostState::estimate(NodeId u) const {
  if (u >= assignment_->num_nodes()) return std::nullopt;
  const Coreness e = lookup(u);
  if (e == kInfinity) return std::nullopt;
  return e;
}

void HostState::touch_neighbors(NodeId u) {
  for (NodeId w : graph_->neighbors(u)) {
    if (owns(w)) dirty_[assignment_->local_index(w)] = 1;
  }
}

std::vector<NodeId> HostState::improve_estimate() {
  // A node whose neighborhood did not move since its last evaluation would
  // recompute its own value, so only dirty nodes are evaluated. Passes and
  // their order match a full ascending sweep.
  const auto& mine = owned();
  std::vector<NodeId> decreased;
  bool again = true;
  while (again) {
    again = false;
    for (std::size_t i = 0; i < mine.size(); ++i) {
      if (!dirty_[i]) continue;
      dirty_[i] = 0;
      const Coreness current = owned_est_[i];
      if (current == 0) continue;
      const NodeId u = mine[i];
      const auto estimates =
          graph_->neighbors(u) | std::views::transform([this](NodeId v) { return lookup(v); });
      const Coreness k = compute_index(estimates, current, counts_);
      if (k < current) {
        owned_est_[i] = k;
        changed_[i] = 1;
        again = true;
        decreased.push_back(u);
        touch_neighbors(u);
      }
    }
  }
  std::sort(decreased.begin(), decreased.end());
  decreased.erase(std::unique(decreased.begin(), decreased.end()), decreased.end());
  return decreased;
}

void HostState::on_receive(const UpdateBatch& batch) {
  if (batch.origin == id_) return;
  for (const auto& [node, estimate] : batch.entries) {
    const auto it = frontier_est_.find(node);
    if (it == frontier_est_.end()) {
      ++ignored_entries_;
      continue;
    }
    if (estimate < it->second) {
      it->second = estimate;
      touch_neighbors(node);
    }
  }
  improve_estimate();
}

Outbox HostState::dispatch(Policy policy, const std::vector<NodeId>& nodes) {
  Outbox out;
  out.emitted.reserve(nodes.size());
  for (NodeId u : nodes) out.emitted.push_back({u, owned_estimate(u)});
  if (nodes.empty()) return out;

  if (policy == Policy::broadcast) {
    if (!frontier_links_.empty()) out.dispatches.push_back({neighbor_hosts(), {id_, out.emitted}});
    return out;
  }
  for (const auto& [y, linked] : frontier_links_) {
    UpdateBatch batch{id_, {}};
    auto it = linked.begin();
    for (const auto& entry : out.emitted) {
      it = std::lower_bound(it, linked.end(), entry.node);
      if (it != linked.end() && *it == entry.node) batch.entries.push_back(entry);
    }
    if (!batch.entries.empty()) out.dispatches.push_back({{y}, std::move(batch)});
  }
  return out;
}

Outbox HostState::initialize(Policy policy) {
  improve_estimate();
  std::fill(changed_.begin(), changed_.end(), 0);
  return dispatch(policy, owned());
}

Outbox HostState::round_emit(Policy policy) {
  const auto& mine = owned();
  std::vector<NodeId> nodes;
  for (std::size_t i = 0; i < mine.size(); ++i) {
    if (changed_[i]) {
      nodes.push_back(mine[i]);
      changed_[i] = 0;
    }
  }
  return dispatch(policy, nodes);
}

void write_batch(std::ostream& out, std::size_t round, const UpdateBatch& batch) {
  for (const auto& [node, estimate] : batch.entries) {
    out << round << ' ' << batch.origin << ' ' << node << ' ' << estimate << '\n';
  }
}

}  // namespace dkcore
