#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dkcore/graph.hpp"
#include "dkcore/hosted.hpp"
#include "dkcore/oracle.hpp"
#include "dkcore/protocol.hpp"

namespace dkcore {

/// Raised when a run breaks safety, monotone descent, or ends quiescent
/// with estimates different from the oracle.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Schedule {
  sync,    // round r delivers everything sent in round r-1
  random,  // seeded per-round order; sends are visible to later nodes at once
};

enum class Protocol { one_to_one, one_to_many };

/// Called after every round with the estimate of every node.
using RoundObserver = std::function<void(std::size_t round, std::span<const Coreness> estimates)>;

struct RunOptions {
  Schedule schedule = Schedule::sync;
  std::uint64_t seed = 1;
  SendFilter filter = SendFilter::plain;  // one-to-one only
  std::optional<std::size_t> max_rounds;  // default N + 1
  // Enables the error trace, per-core table and invariant checks.
  const CorenessMap* oracle = nullptr;
  std::vector<std::size_t> sample_rounds;  // per-core completion samples
  RoundObserver observer;
  std::ostream* batch_log = nullptr;  // one-to-many batch trace
};

struct TraceRow {
  std::size_t round = 0;
  double avg_error = 0.0;
  std::uint64_t max_error = 0;
  std::int64_t min_error = 0;
  std::uint64_t messages = 0;
};

struct CoreCompletionRow {
  Coreness k = 0;
  std::size_t shell_size = 0;
  std::vector<double> incorrect;  // fraction of the shell still wrong, per sample round
};

struct PerCoreTable {
  std::vector<std::size_t> sample_rounds;
  std::vector<CoreCompletionRow> rows;
};

/// Outcome of one simulated run.
///
/// Message units: one-to-one counts point-to-point messages; one-to-many
/// counts estimate entries crossing hosts, where a broadcast batch counts
/// its entries once regardless of how many hosts receive it.
struct RunReport {
  Protocol protocol = Protocol::one_to_one;
  Schedule schedule = Schedule::sync;
  std::uint64_t seed = 0;
  SendFilter filter = SendFilter::plain;
  std::optional<Policy> policy;
  std::size_t hosts = 0;
  std::size_t nodes = 0;

  std::size_t exec_time_rounds = 0;  // rounds with at least one emission
  std::size_t rounds_simulated = 0;  // including the closing quiet round
  std::uint64_t initial_messages = 0;
  std::uint64_t update_messages = 0;
  std::uint64_t max_node_messages = 0;  // most messages sent on behalf of one node
  std::uint64_t ignored_entries = 0;
  CorenessMap final_coreness;
  std::vector<TraceRow> error_trace;
  PerCoreTable per_core_completion;
  std::optional<double> overhead_per_node;
  bool converged = false;
};

/// Simulates the one-to-one protocol. Stops at the first round without
/// emissions, or after max_rounds with converged = false.
RunReport run_one_to_one(const Graph& g, const RunOptions& options = {});

/// Simulates the one-to-many protocol with node u on host u mod hosts.
RunReport run_one_to_many(const Graph& g, std::size_t hosts, Policy policy, const RunOptions& options = {});
RunReport run_one_to_many(const Graph& g, const Assignment& assignment, Policy policy,
                          const RunOptions& options = {});

struct BoundReport {
  std::uint64_t bound_b1 = 0;         // 1 + sum(d - k)
  std::uint64_t bound_b2 = 0;         // N
  std::uint64_t bound_corollary = 0;  // N - K + 1
  std::uint64_t bound_messages = 0;   // sum(d^2) - 2M
  std::uint64_t observed_T = 0;
  std::uint64_t observed_updates = 0;
  bool all_satisfied = false;
};

/// Compares a run against the round and message bounds. The bounds hold for
/// synchronous plain one-to-one runs; other reports are rejected with
/// std::invalid_argument.
BoundReport check_bounds(const Graph& g, const CorenessMap& oracle, const RunReport& report);

}  // namespace dkcore
