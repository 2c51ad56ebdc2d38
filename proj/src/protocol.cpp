#include "dkcore/protocol.hpp"

#include <algorithm>
#include <string>

namespace dkcore {

Coreness compute_index(std::span<const Coreness> estimates, Coreness k) {
  std::vector<std::size_t> counts;
  return compute_index(estimates, k, counts);
}

NodeState::NodeState(NodeId id, const Graph& g)
    : id_(id),
      neighbors_(g.neighbors(id)),
      est_(neighbors_.size(), kInfinity),
      sent_floor_(neighbors_.size(), kInfinity),
      core_(static_cast<Coreness>(neighbors_.size())) {}

Emission NodeState::initial_emission() {
  Emission out{{id_, core_}, {neighbors_.begin(), neighbors_.end()}};
  std::fill(sent_floor_.begin(), sent_floor_.end(), core_);
  return out;
}

std::optional<std::size_t> NodeState::slot_of(NodeId v) const {
  const auto it = std::lower_bound(neighbors_.begin(), neighbors_.end(), v);
  if (it == neighbors_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - neighbors_.begin());
}

std::optional<Coreness> NodeState::estimate_of(NodeId v) const {
  const auto slot = slot_of(v);
  if (!slot) throw ProtocolError("node " + std::to_string(v) + " is not a neighbor of " + std::to_string(id_));
  if (est_[*slot] == kInfinity) return std::nullopt;
  return est_[*slot];
}

bool NodeState::on_receive(const Message& m) {
  const auto slot = slot_of(m.sender);
  if (!slot) {
    throw ProtocolError("node " + std::to_string(id_) + " received an estimate from non-neighbor " +
                        std::to_string(m.sender));
  }
  if (m.estimate >= est_[*slot]) return false;
  est_[*slot] = m.estimate;

  thread_local std::vector<std::size_t> counts;
  const Coreness t = compute_index(est_, core_, counts);
  if (t >= core_) return false;
  core_ = t;
  changed_ = true;
  return true;
}

Emission NodeState::round_emit(SendFilter filter) {
  Emission out{{id_, core_}, {}};
  if (!changed_) return out;
  changed_ = false;
  for (std::size_t i = 0; i < neighbors_.size(); ++i) {
    if (filter == SendFilter::optimized && core_ >= std::min(est_[i], sent_floor_[i])) continue;
    out.recipients.push_back(neighbors_[i]);
    sent_floor_[i] = core_;
  }
  return out;
}

}  // namespace dkcore
