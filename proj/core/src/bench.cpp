#include "dcs/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "dcs/engine.hpp"
#include "dcs/error.hpp"
#include "dcs/fsp/elaborate.hpp"
#include "dcs/fsp/parser.hpp"
#include "dcs/oracle.hpp"
#include "dcs/transfer_line.hpp"

namespace dcs {

namespace {

// Exact counting is limited to products a desk run composes in moments.
constexpr double kExactCountBound = 2e6;

std::string format_bound(double bound) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", bound);
    return buf;
}

double product_bound(const ControlProblem& problem) {
    double bound = 1.0;
    for (size_t c = 0; c < problem.n_components(); ++c)
        bound *= static_cast<double>(problem.component(c).n_states());
    // Normalized through the CSV format so emit/parse is a fixpoint.
    return std::stod(format_bound(bound));
}

BenchRow run_one(const TlConfig& cfg, bool& verified) {
    BenchRow row;
    row.machines = cfg.machines;
    row.workload = cfg.workload;
    row.capacity = cfg.capacity;
    row.engine = cfg.engine;
    verified = true;

    auto start = std::chrono::steady_clock::now();
    auto deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                std::chrono::duration<double>(cfg.timeout_s));
    auto elapsed_ms = [&] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    };

    try {
        fsp::SpecAst ast =
            fsp::parse(generate_transfer_line(cfg.machines, cfg.workload, cfg.capacity));
        fsp::Elaboration elab = fsp::elaborate(ast);
        const ControlProblem& problem = *elab.problem;
        row.product_bound = product_bound(problem);
        if (row.product_bound <= kExactCountBound)
            row.product_exact =
                static_cast<int64_t>(compose_full(problem, cfg.compose_cap, deadline).states.size());

        if (cfg.engine == "oracle") {
            GameSolution sol = solve_monolithic(problem, cfg.compose_cap, deadline);
            row.verdict = sol.initial_winning ? "controller" : "none";
            row.product_exact = static_cast<int64_t>(sol.product.states.size());
        } else {
            SynthesisLimits limits;
            limits.max_expansions = cfg.max_expansions;
            limits.deadline = deadline;
            SynthesisResult result = synthesize(problem, limits);
            row.verdict = to_string(result.verdict);
            row.expanded = result.stats.expanded;
            if (result.controller) {
                row.controller_states = static_cast<int64_t>(result.controller->lts.n_states());
                VerificationReport report =
                    verify_controller(problem, result.controller->lts, cfg.compose_cap);
                verified = report.ok;
            }
        }
    } catch (const CapacityError& e) {
        row.verdict = std::string(e.what()).find("timeout") != std::string::npos
                          ? "timeout"
                          : "out-of-memory";
    }
    row.wall_ms = elapsed_ms();
    return row;
}

} // namespace

BenchOutcome run_bench(const std::vector<TlConfig>& configs) {
    BenchOutcome outcome;
    for (const TlConfig& cfg : configs) {
        bool verified = true;
        outcome.rows.push_back(run_one(cfg, verified));
        if (!verified)
            outcome.all_verified = false;
    }
    return outcome;
}

void write_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
    os << "M,W,C,engine,verdict,wall_ms,expanded,controller_states,product_bound,product_exact\n";
    for (const BenchRow& r : rows)
        os << r.machines << ',' << r.workload << ',' << r.capacity << ',' << r.engine << ','
           << r.verdict << ',' << r.wall_ms << ',' << r.expanded << ',' << r.controller_states
           << ',' << format_bound(r.product_bound) << ',' << r.product_exact << '\n';
}

std::vector<BenchRow> parse_csv(std::istream& is) {
    std::vector<BenchRow> rows;
    std::string line;
    if (!std::getline(is, line))
        throw IoError("empty CSV");
    if (line.rfind("M,W,C,", 0) != 0)
        throw IoError("unexpected CSV header: " + line);
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ','))
            fields.push_back(field);
        if (fields.size() != 10)
            throw IoError("bad CSV row: " + line);
        BenchRow r;
        r.machines = std::stoi(fields[0]);
        r.workload = std::stoi(fields[1]);
        r.capacity = std::stoi(fields[2]);
        r.engine = fields[3];
        r.verdict = fields[4];
        r.wall_ms = std::stoll(fields[5]);
        r.expanded = std::stoll(fields[6]);
        r.controller_states = std::stoll(fields[7]);
        r.product_bound = std::stod(fields[8]);
        r.product_exact = std::stoll(fields[9]);
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace dcs
