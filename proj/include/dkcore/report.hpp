#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "dkcore/engine.hpp"

namespace dkcore {

std::string to_string(Schedule schedule);
std::string to_string(Policy policy);
std::string to_string(Protocol protocol);

nlohmann::ordered_json to_json(const RunReport& report);
nlohmann::ordered_json to_json(const BoundReport& bounds);

/// "round,avg_error,max_error,messages", one row per round.
void write_trace_csv(std::ostream& out, const RunReport& report);

/// "k,shell_size,<t1>,<t2>,..." where the round columns hold the fraction of
/// the k-shell whose estimate is still wrong after that round.
void write_per_core_csv(std::ostream& out, const RunReport& report);

/// "key=value" per line, in field order.
void write_bounds_text(std::ostream& out, const BoundReport& bounds);

}  // namespace dkcore
