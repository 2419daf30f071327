#pragma once

#include <string>

#include <json.hpp>

namespace splice {

struct SolveReport;
struct FunctionalBreakdown;

/// Version of every JSON report document written by the library and CLI.
inline constexpr int kSchemaVersion = 1;

/// Shortest round-trip-stable text for CSV output: 17 significant digits,
/// '.' separator, independent of the locale.
std::string format_number(double v);

nlohmann::json to_json(const SolveReport& report);
nlohmann::json to_json(const FunctionalBreakdown& b);

}  // namespace splice
