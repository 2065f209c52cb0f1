#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cutcraft/graph.hpp"
#include "cutcraft/report.hpp"

namespace cutcraft {

// One solver invocation on one instance.
struct BenchRecord {
    std::string instance;   // stable id within the run
    std::string params;     // generator parameters, human-readable
    Problem problem = Problem::cmc;
    std::string algorithm;
    uint64_t seed = 1;
    int n = 0;
    int m = 0;
    std::optional<long long> optimum;  // empty on timeout/skip or "no cut"
    long long elapsed_ms = 0;          // zeroed unless the manifest sets timings
    long long table_cells = 0;
    std::optional<bool> agree;  // vs. the reference value, when one was computed
    std::string status = "ok";  // ok | timeout | skipped
};

struct BenchOutput {
    std::vector<BenchRecord> records;  // instance-major, then algorithm, then seed
    std::string csv;
    std::string summary;
};

// Runs the benchmark described by a JSON manifest and returns every cell's
// record plus a CSV rendering and a short text summary. The manifest schema
// (instances / algorithms / seeds / budget_ms / ...) is documented in the
// README. Instances small enough for the exhaustive reference solver are
// cross-checked against it; any contradiction writes a reproduction bundle
// (graph, report, note) under `repro_dir` and throws. A sampling solver
// falling short of the reference value is recorded, not fatal — only claiming
// a cut better than the true optimum is. Elapsed times are reported as zero
// unless the manifest sets "timings": true, so output is byte-stable across
// machines. Cells run on a small worker pool; results are ordered as if
// sequential.
BenchOutput run_bench(const std::string& manifest_json,
                      const std::string& repro_dir = "bench-repro");

std::string bench_csv(const std::vector<BenchRecord>& records);

}  // namespace cutcraft
