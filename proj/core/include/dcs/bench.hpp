#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dcs {

struct TlConfig {
    int machines = 1;
    int workload = 1;
    int capacity = 1;
    std::string engine = "dcs"; // "dcs" | "oracle"
    double timeout_s = 300.0;
    int64_t max_expansions = -1;
    size_t compose_cap = 10'000'000;
};

struct BenchRow {
    int machines = 0, workload = 0, capacity = 0;
    std::string engine;
    std::string verdict; // controller | none | timeout | out-of-memory
    int64_t wall_ms = 0;
    int64_t expanded = -1;          // dcs only
    int64_t controller_states = -1; // dcs with a controller
    double product_bound = 0;       // product of component state counts
    int64_t product_exact = -1;     // reachable count when cheap enough

    bool operator==(const BenchRow&) const = default;
};

struct BenchOutcome {
    std::vector<BenchRow> rows;
    bool all_verified = true; // every emitted controller passed the verifier
};

// Runs each configuration under its caps; a per-row timeout or cap is
// recorded in the row, never aborts the batch. Every emitted controller
// is re-checked by the verifier before the row says "controller".
BenchOutcome run_bench(const std::vector<TlConfig>& configs);

// CSV with the fixed column set
// M,W,C,engine,verdict,wall_ms,expanded,controller_states,product_bound,product_exact
void write_csv(std::ostream& os, const std::vector<BenchRow>& rows);
std::vector<BenchRow> parse_csv(std::istream& is);

} // namespace dcs
