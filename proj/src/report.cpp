#include "dkcore/report.hpp"

#include <cstdio>
#include <ostream>

namespace dkcore {
namespace {

std::string fixed(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  return buffer;
}

}  // namespace

std::string to_string(Schedule schedule) { return schedule == Schedule::sync ? "sync" : "random"; }
std::string to_string(Policy policy) { return policy == Policy::broadcast ? "broadcast" : "p2p"; }
std::string to_string(Protocol protocol) { return protocol == Protocol::one_to_one ? "one2one" : "one2many"; }

nlohmann::ordered_json to_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["protocol"] = to_string(report.protocol);
  j["schedule"] = to_string(report.schedule);
  j["seed"] = report.seed;
  j["optimized"] = report.filter == SendFilter::optimized;
  j["policy"] = report.policy ? nlohmann::ordered_json(to_string(*report.policy)) : nlohmann::ordered_json();
  j["hosts"] = report.hosts;
  j["nodes"] = report.nodes;
  j["exec_time_rounds"] = report.exec_time_rounds;
  j["rounds_simulated"] = report.rounds_simulated;
  j["update_messages"] = report.update_messages;
  j["initial_messages"] = report.initial_messages;
  j["max_node_messages"] = report.max_node_messages;
  j["ignored_entries"] = report.ignored_entries;
  j["final_coreness"] = report.final_coreness.values();

  auto trace = nlohmann::ordered_json::array();
  for (const auto& row : report.error_trace) {
    trace.push_back({{"round", row.round},
                     {"avg_error", row.avg_error},
                     {"max_error", row.max_error},
                     {"min_error", row.min_error},
                     {"messages", row.messages}});
  }
  j["error_trace"] = std::move(trace);

  nlohmann::ordered_json table;
  table["sample_rounds"] = report.per_core_completion.sample_rounds;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : report.per_core_completion.rows) {
    rows.push_back({{"k", row.k}, {"shell_size", row.shell_size}, {"incorrect", row.incorrect}});
  }
  table["rows"] = std::move(rows);
  j["per_core_completion"] = std::move(table);

  j["overhead_per_node"] =
      report.overhead_per_node ? nlohmann::ordered_json(*report.overhead_per_node) : nlohmann::ordered_json();
  j["converged"] = report.converged;
  return j;
}

nlohmann::ordered_json to_json(const BoundReport& b) {
  nlohmann::ordered_json j;
  j["bound_b1"] = b.bound_b1;
  j["bound_b2"] = b.bound_b2;
  j["bound_corollary"] = b.bound_corollary;
  j["bound_messages"] = b.bound_messages;
  j["observed_T"] = b.observed_T;
  j["observed_updates"] = b.observed_updates;
  j["all_satisfied"] = b.all_satisfied;
  return j;
}

void write_trace_csv(std::ostream& out, const RunReport& report) {
  out << "round,avg_error,max_error,messages\n";
  for (const auto& row : report.error_trace) {
    out << row.round << ',' << fixed(row.avg_error, 6) << ',' << row.max_error << ',' << row.messages << '\n';
  }
}

void write_per_core_csv(std::ostream& out, const RunReport& report) {
  const auto& table = report.per_core_completion;
  out << "k,shell_size";
  for (auto t : table.sample_rounds) out << ',' << t;
  out << '\n';
  for (const auto& row : table.rows) {
    out << row.k << ',' << row.shell_size;
    for (double f : row.incorrect) out << ',' << fixed(f, 6);
    out << '\n';
  }
}

void write_bounds_text(std::ostream& out, const BoundReport& b) {
  const auto j = to_json(b);
  for (const auto& [key, value] : j.items()) out << key << '=' << value.dump() << '\n';
}

}  // namespace dkcore
