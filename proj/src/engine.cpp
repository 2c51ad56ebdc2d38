#include "dkcore/engine.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <string>

#include "dkcore/rng.hpp"

namespace dkcore {
namespace {

std::size_t round_limit(const Graph& g, const RunOptions& options) {
  return std::max<std::size_t>(1, options.max_rounds.value_or(g.num_nodes() + 1));
}

// Per-round bookkeeping shared by both protocols: execution time, the error
// trace, per-core samples, and the runtime invariants.
class RoundTracker {
 public:
  RoundTracker(const Graph& g, const RunOptions& options, RunReport& report)
      : options_(options), report_(report), previous_(g.num_nodes()) {
    for (NodeId u = 0; u < g.num_nodes(); ++u) previous_[u] = static_cast<Coreness>(g.degree(u));
    if (options.oracle != nullptr) {
      if (options.oracle->size() != g.num_nodes()) throw std::invalid_argument("oracle does not cover the graph");
      samples_ = options.sample_rounds;
      std::sort(samples_.begin(), samples_.end());
      samples_.erase(std::unique(samples_.begin(), samples_.end()), samples_.end());
      auto& table = report_.per_core_completion;
      table.sample_rounds = samples_;
      std::vector<std::size_t> shell_size;
      for (Coreness k : options.oracle->values()) {
        if (k >= shell_size.size()) shell_size.resize(k + 1, 0);
        ++shell_size[k];
      }
      for (std::size_t k = 0; k < shell_size.size(); ++k) {
        if (shell_size[k] > 0) table.rows.push_back({static_cast<Coreness>(k), shell_size[k], {}});
      }
    }
  }

  void end_round(std::size_t round, bool emitted, std::uint64_t messages, std::span<const Coreness> estimates) {
    for (std::size_t u = 0; u < estimates.size(); ++u) {
      if (estimates[u] > previous_[u]) {
        throw InvariantViolation("estimate of node " + std::to_string(u) + " increased at round " +
                                 std::to_string(round));
      }
    }
    std::copy(estimates.begin(), estimates.end(), previous_.begin());
    if (emitted) ++report_.exec_time_rounds;
    report_.rounds_simulated = round;

    if (options_.oracle != nullptr) {
      const auto& oracle = *options_.oracle;
      TraceRow row{round, 0.0, 0, 0, messages};
      std::int64_t sum = 0;
      for (std::size_t u = 0; u < estimates.size(); ++u) {
        const std::int64_t error = static_cast<std::int64_t>(estimates[u]) - oracle[static_cast<NodeId>(u)];
        if (error < 0) {
          throw InvariantViolation("estimate of node " + std::to_string(u) + " fell below its coreness at round " +
                                   std::to_string(round));
        }
        sum += error;
        row.max_error = std::max<std::uint64_t>(row.max_error, static_cast<std::uint64_t>(error));
        row.min_error = u == 0 ? error : std::min(row.min_error, error);
      }
      if (!estimates.empty()) row.avg_error = static_cast<double>(sum) / static_cast<double>(estimates.size());
      report_.error_trace.push_back(row);
      for (; next_sample_ < samples_.size() && samples_[next_sample_] <= round; ++next_sample_) {
        record_sample(estimates);
      }
    }
    if (options_.observer) options_.observer(round, estimates);
  }

  void finish(std::span<const Coreness> estimates, bool converged) {
    report_.final_coreness = CorenessMap({estimates.begin(), estimates.end()});
    report_.converged = converged;
    if (options_.oracle == nullptr) return;
    // Samples past the end see the final state.
    for (; next_sample_ < samples_.size(); ++next_sample_) record_sample(estimates);
    if (converged && report_.final_coreness != *options_.oracle) {
      throw InvariantViolation("run went quiescent with estimates different from the exact coreness");
    }
  }

 private:
  void record_sample(std::span<const Coreness> estimates) {
    const auto& oracle = *options_.oracle;
    auto& rows = report_.per_core_completion.rows;
    std::vector<std::size_t> wrong(rows.empty() ? 0 : rows.back().k + 1, 0);
    for (std::size_t u = 0; u < estimates.size(); ++u) {
      if (estimates[u] != oracle[static_cast<NodeId>(u)]) ++wrong[oracle[static_cast<NodeId>(u)]];
    }
    for (auto& row : rows) {
      row.incorrect.push_back(static_cast<double>(wrong[row.k]) / static_cast<double>(row.shell_size));
    }
  }

  const RunOptions& options_;
  RunReport& report_;
  std::vector<Coreness> previous_;
  std::vector<std::size_t> samples_;
  std::size_t next_sample_ = 0;
};

}  // namespace

RunReport run_one_to_one(const Graph& g, const RunOptions& options) {
  const std::size_t n = g.num_nodes();
  RunReport report;
  report.protocol = Protocol::one_to_one;
  report.schedule = options.schedule;
  report.seed = options.seed;
  report.filter = options.filter;
  report.hosts = n;
  report.nodes = n;
  RoundTracker tracker(g, options, report);

  std::vector<NodeState> states;
  states.reserve(n);
  for (NodeId u = 0; u < n; ++u) states.emplace_back(u, g);

  const bool sync = options.schedule == Schedule::sync;
  std::vector<std::vector<Message>> inbox(n);
  std::vector<std::vector<Message>> next(sync ? n : 0);
  auto& outgoing = sync ? next : inbox;

  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  Rng rng(options.seed);

  std::vector<std::uint64_t> sent(n, 0);
  std::vector<Coreness> estimates(n);
  std::uint64_t messages = 0;
  bool emitted = false;
  auto post = [&](const Emission& e) {
    if (e.empty()) return;
    emitted = true;
    messages += e.recipients.size();
    sent[e.message.sender] += e.recipients.size();
    for (NodeId v : e.recipients) outgoing[v].push_back(e.message);
  };
  auto snapshot = [&] {
    for (NodeId u = 0; u < n; ++u) estimates[u] = states[u].core();
  };

  const std::size_t limit = round_limit(g, options);
  bool converged = false;
  for (std::size_t round = 1; round <= limit; ++round) {
    messages = 0;
    emitted = false;
    if (sync) {
      std::swap(inbox, next);
    } else {
      rng.shuffle(std::span<NodeId>(order));
    }
    for (NodeId u : order) {
      auto& state = states[u];
      if (round == 1) {
        post(state.initial_emission());
        continue;
      }
      for (const auto& m : inbox[u]) state.on_receive(m);
      inbox[u].clear();
      post(state.round_emit(options.filter));
    }
    (round == 1 ? report.initial_messages : report.update_messages) += messages;
    snapshot();
    tracker.end_round(round, emitted, messages, estimates);
    if (!emitted) {
      converged = true;
      break;
    }
  }
  snapshot();
  report.max_node_messages = sent.empty() ? 0 : *std::max_element(sent.begin(), sent.end());
  tracker.finish(estimates, converged);
  return report;
}

RunReport run_one_to_many(const Graph& g, std::size_t hosts, Policy policy, const RunOptions& options) {
  const auto assignment = Assignment::modulo(g.num_nodes(), hosts);
  return run_one_to_many(g, assignment, policy, options);
}

RunReport run_one_to_many(const Graph& g, const Assignment& assignment, Policy policy, const RunOptions& options) {
  if (options.filter != SendFilter::plain) {
    throw std::invalid_argument("the optimized send filter applies to the one-to-one protocol only");
  }
  const std::size_t n = g.num_nodes();
  const std::size_t h = assignment.num_hosts();
  RunReport report;
  report.protocol = Protocol::one_to_many;
  report.schedule = options.schedule;
  report.seed = options.seed;
  report.policy = policy;
  report.hosts = h;
  report.nodes = n;
  RoundTracker tracker(g, options, report);

  std::vector<HostState> hosts;
  hosts.reserve(h);
  for (HostId x = 0; x < h; ++x) hosts.emplace_back(x, g, assignment);

  using BatchPtr = std::shared_ptr<const UpdateBatch>;
  const bool sync = options.schedule == Schedule::sync;
  std::vector<std::vector<BatchPtr>> inbox(h);
  std::vector<std::vector<BatchPtr>> next(sync ? h : 0);
  auto& outgoing = sync ? next : inbox;

  std::vector<HostId> order(h);
  std::iota(order.begin(), order.end(), HostId{0});
  Rng rng(options.seed);

  std::vector<std::uint64_t> sent(n, 0);
  std::vector<Coreness> estimates(n);
  std::uint64_t messages = 0;
  bool emitted = false;
  std::size_t round = 0;
  auto post = [&](Outbox outbox) {
    if (outbox.empty()) return;
    emitted = true;
    for (auto& d : outbox.dispatches) {
      if (d.destinations.empty()) continue;
      messages += d.batch.entries.size();
      for (const auto& entry : d.batch.entries) ++sent[entry.node];
      if (options.batch_log != nullptr) write_batch(*options.batch_log, round, d.batch);
      auto batch = std::make_shared<const UpdateBatch>(std::move(d.batch));
      for (HostId y : d.destinations) outgoing[y].push_back(batch);
    }
  };
  auto snapshot = [&] {
    for (const auto& host : hosts) {
      for (NodeId u : host.owned()) estimates[u] = host.owned_estimate(u);
    }
  };

  const std::size_t limit = round_limit(g, options);
  bool converged = false;
  for (round = 1; round <= limit; ++round) {
    messages = 0;
    emitted = false;
    if (sync) {
      std::swap(inbox, next);
    } else {
      rng.shuffle(std::span<HostId>(order));
    }
    for (HostId x : order) {
      auto& host = hosts[x];
      if (round == 1) {
        post(host.initialize(policy));
        continue;
      }
      for (const auto& batch : inbox[x]) host.on_receive(*batch);
      inbox[x].clear();
      post(host.round_emit(policy));
    }
    (round == 1 ? report.initial_messages : report.update_messages) += messages;
    snapshot();
    tracker.end_round(round, emitted, messages, estimates);
    if (!emitted) {
      converged = true;
      break;
    }
  }
  snapshot();
  for (const auto& host : hosts) report.ignored_entries += host.ignored_entries();
  report.max_node_messages = sent.empty() ? 0 : *std::max_element(sent.begin(), sent.end());
  report.overhead_per_node =
      n == 0 ? 0.0 : static_cast<double>(report.initial_messages + report.update_messages) / static_cast<double>(n);
  tracker.finish(estimates, converged);
  return report;
}

BoundReport check_bounds(const Graph& g, const CorenessMap& oracle, const RunReport& report) {
  if (report.protocol != Protocol::one_to_one || report.schedule != Schedule::sync ||
      report.filter != SendFilter::plain) {
    throw std::invalid_argument("bounds apply to synchronous plain one-to-one runs only");
  }
  if (oracle.size() != g.num_nodes()) throw std::invalid_argument("oracle does not cover the graph");

  const auto s = stats(g, oracle);
  BoundReport b;
  std::uint64_t initial_error = 0;
  std::uint64_t degree_squares = 0;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    const std::uint64_t d = g.degree(u);
    initial_error += d - oracle[u];
    degree_squares += d * d;
  }
  b.bound_b1 = 1 + initial_error;
  b.bound_b2 = g.num_nodes();
  b.bound_corollary = g.num_nodes() - s.min_degree_count + 1;
  b.bound_messages = degree_squares - 2 * g.num_edges();
  b.observed_T = report.exec_time_rounds;
  b.observed_updates = report.update_messages;
  b.all_satisfied = b.observed_T <= b.bound_b1 && b.observed_T <= b.bound_b2 && b.observed_T <= b.bound_corollary &&
                    b.observed_updates <= b.bound_messages;
  return b;
}

}  // namespace dkcore
