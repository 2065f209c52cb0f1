#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cutcraft/graph.hpp"

namespace cutcraft {

// Result of one solve. `witness` holds the S side as 0-based vertex ids;
// serialization converts to sorted 1-based. `optimum` empty means no cut
// exists for the instance (only possible for degenerate mmc variants).
struct SolveReport {
    Problem problem = Problem::cmc;
    std::string algorithm;
    int n = 0, m = 0;
    std::optional<long long> optimum;
    std::optional<std::vector<int>> witness;
    std::optional<std::pair<int, int>> anchors;   // set for -st problems
    std::optional<uint64_t> seed;
    std::optional<int> repeats;
    long long elapsed_ms = 0;
};

// Side-channel statistics (not part of the serialized report).
struct SolveStats {
    long long table_cells = 0;   // peak stored DP entries across nodes
};

std::string serialize_report(const SolveReport& r);
SolveReport parse_report(const std::string& text);
SolveReport parse_report_file(const std::string& path);

// Recomputes witness feasibility and size; true iff both match the report.
// A report without a witness verifies only if it also claims no cut exists.
bool verify_report(const Graph& g, const SolveReport& r, std::string* why = nullptr);

}  // namespace cutcraft
