#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dcs/aut.hpp"
#include "dcs/bench.hpp"
#include "dcs/compose.hpp"
#include "dcs/dot.hpp"
#include "dcs/engine.hpp"
#include "dcs/error.hpp"
#include "dcs/fsp/elaborate.hpp"
#include "dcs/fsp/parser.hpp"
#include "dcs/log.hpp"
#include "dcs/oracle.hpp"
#include "dcs/transfer_line.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1; // no controller / verification failed
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw dcs::IoError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

dcs::fsp::Bindings parse_params(const std::vector<std::string>& params) {
    dcs::fsp::Bindings bindings;
    for (const std::string& p : params) {
        size_t eq = p.find('=');
        if (eq == std::string::npos || eq == 0)
            throw dcs::Error("E-USAGE", "--param expects NAME=INT, got '" + p + "'");
        try {
            bindings[p.substr(0, eq)] = std::stoll(p.substr(eq + 1));
        } catch (const std::exception&) {
            throw dcs::Error("E-USAGE", "--param value in '" + p + "' is not an integer");
        }
    }
    return bindings;
}

dcs::fsp::Elaboration load_model(const std::string& path,
                                 const std::vector<std::string>& params) {
    dcs::fsp::SpecAst ast = dcs::fsp::parse(read_file(path));
    dcs::fsp::Elaboration elab = dcs::fsp::elaborate(ast, parse_params(params));
    dcs::log::info("elaborated '", elab.target, "': ", elab.components.size(), " component(s)");
    return elab;
}

const dcs::ControlProblem& require_problem(const dcs::fsp::Elaboration& elab) {
    if (!elab.problem)
        throw dcs::ElaborationError(
            "the model declares no control problem; add controllable/reach/avoid directives");
    return *elab.problem;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw dcs::IoError("cannot write '" + path + "'");
    out << content;
}

std::string render_lts(const dcs::Lts& lts, const std::string& format) {
    std::ostringstream os;
    if (format == "dot")
        dcs::write_dot(os, lts);
    else
        dcs::write_aut(os, lts);
    return os.str();
}

dcs::SynthesisLimits make_limits(int64_t max_expansions, double timeout_s) {
    dcs::SynthesisLimits limits;
    limits.max_expansions = max_expansions;
    if (timeout_s > 0)
        limits.deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(timeout_s));
    return limits;
}

void emit_stats(const dcs::SynthesisStats& stats, dcs::SynthesisVerdict verdict,
                const std::string& stats_file) {
    std::string line = dcs::stats_json(stats, verdict);
    std::cerr << line << '\n';
    if (!stats_file.empty()) {
        std::ofstream out(stats_file);
        if (!out)
            throw dcs::IoError("cannot write '" + stats_file + "'");
        out << line << '\n';
    }
}

int run_synth(const std::string& file, const std::vector<std::string>& params,
              const std::string& output, const std::string& format, int64_t max_expansions,
              double timeout_s, const std::string& stats_file) {
    dcs::fsp::Elaboration elab = load_model(file, params);
    const dcs::ControlProblem& problem = require_problem(elab);
    dcs::SynthesisResult result = dcs::synthesize(problem, make_limits(max_expansions, timeout_s));
    emit_stats(result.stats, result.verdict, stats_file);
    switch (result.verdict) {
    case dcs::SynthesisVerdict::Controller:
        write_output(output, render_lts(result.controller->lts, format));
        return kExitOk;
    case dcs::SynthesisVerdict::NoController:
        std::cerr << "no controller exists for this problem\n";
        return kExitNegative;
    default:
        std::cerr << "E-CAP: synthesis stopped: " << to_string(result.verdict) << '\n';
        return kExitCap;
    }
}

int run_oracle(const std::string& file, const std::vector<std::string>& params, size_t cap,
               double timeout_s) {
    dcs::fsp::Elaboration elab = load_model(file, params);
    dcs::Deadline deadline;
    if (timeout_s > 0)
        deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(timeout_s));
    dcs::GameSolution sol = dcs::solve_monolithic(require_problem(elab), cap, deadline);
    std::cout << "verdict: " << (sol.initial_winning ? "controller" : "none") << '\n';
    std::cout << "winning_states: " << sol.winning_count() << '\n';
    std::cout << "product_states: " << sol.product.states.size() << '\n';
    return sol.initial_winning ? kExitOk : kExitNegative;
}

int run_verify(const std::string& file, const std::string& controller_path,
               const std::vector<std::string>& params, const std::string& format, size_t cap) {
    dcs::fsp::Elaboration elab = load_model(file, params);
    dcs::Lts controller = dcs::read_aut_file(controller_path);
    dcs::VerificationReport report =
        dcs::verify_controller(require_problem(elab), controller, cap);
    if (format == "json") {
        nlohmann::json j;
        j["ok"] = report.ok;
        j["closed_loop_states"] = report.closed_loop_states;
        j["violations"] = nlohmann::json::array();
        for (const dcs::Violation& v : report.violations) {
            nlohmann::json jv;
            jv["kind"] = to_string(v.kind);
            jv["message"] = v.message;
            jv["witness"] = nlohmann::json::array();
            for (const dcs::Label& l : v.witness)
                jv["witness"].push_back(l.str());
            j["violations"].push_back(std::move(jv));
        }
        std::cout << j.dump(2) << '\n';
    } else {
        if (report.ok) {
            std::cout << "ok: closed loop of " << report.closed_loop_states
                      << " state(s) discharges safely\n";
        } else {
            for (const dcs::Violation& v : report.violations) {
                std::cout << "violation (" << to_string(v.kind) << "): " << v.message
                          << "; witness:";
                for (const dcs::Label& l : v.witness)
                    std::cout << ' ' << l.str();
                std::cout << '\n';
            }
        }
    }
    return report.ok ? kExitOk : kExitNegative;
}

int run_compose(const std::string& file, const std::vector<std::string>& params,
                const std::string& output, const std::string& format, size_t cap) {
    dcs::fsp::Elaboration elab = load_model(file, params);
    dcs::SyncIndex index(elab.components);
    dcs::Composition comp = dcs::compose_full(index, cap);
    dcs::log::info("composed ", comp.states.size(), " reachable state(s)");
    write_output(output, render_lts(comp.lts, format));
    return kExitOk;
}

int run_bench_cmd(std::vector<int> machines, std::vector<int> workloads,
                  std::vector<int> capacities, const std::string& engine,
                  const std::string& output, double timeout_s, int64_t max_expansions,
                  size_t cap) {
    std::vector<dcs::TlConfig> configs;
    std::vector<std::string> engines;
    if (engine == "both")
        engines = {"dcs", "oracle"};
    else
        engines = {engine};
    for (int m : machines)
        for (int w : workloads)
            for (int c : capacities)
                for (const std::string& e : engines) {
                    dcs::TlConfig cfg;
                    cfg.machines = m;
                    cfg.workload = w;
                    cfg.capacity = c;
                    cfg.engine = e;
                    cfg.timeout_s = timeout_s;
                    cfg.max_expansions = max_expansions;
                    cfg.compose_cap = cap;
                    configs.push_back(cfg);
                }
    dcs::BenchOutcome outcome = dcs::run_bench(configs);
    std::ostringstream os;
    dcs::write_csv(os, outcome.rows);
    write_output(output, os.str());
    if (!outcome.all_verified) {
        std::cerr << "E-VERIFY: a synthesized controller failed verification\n";
        return kExitNegative;
    }
    return kExitOk;
}

int run_graph(const std::string& file, const std::vector<std::string>& params,
              const std::string& at, const std::string& output) {
    dcs::fsp::Elaboration elab = load_model(file, params);
    const dcs::ControlProblem& problem = require_problem(elab);
    dcs::CompositeState cs = problem.index().initial_state();
    if (!at.empty()) {
        cs.clear();
        std::istringstream is(at);
        std::string part;
        while (std::getline(is, part, ',')) {
            try {
                cs.push_back(static_cast<dcs::StateId>(std::stol(part)));
            } catch (const std::exception&) {
                throw dcs::Error("E-USAGE", "--at expects comma-separated state ids, got '" +
                                                part + "'");
            }
        }
        if (!problem.index().valid_state(cs))
            throw dcs::Error("E-USAGE", "--at must list one in-range state id per component (" +
                                            std::to_string(problem.n_components()) + " expected)");
    }
    dcs::AbstractionResult result = dcs::build_abstraction(problem, cs);
    std::ostringstream os;
    dcs::write_abstraction_dot(os, problem, result);
    write_output(output, os.str());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"directed controller synthesis for compositional discrete event systems"};
    app.require_subcommand(1);

    std::vector<std::string> params;
    std::string file, controller_path, output, stats_file, at;
    std::string format_synth = "aut", format_compose = "aut", format_verify = "text";
    int64_t max_expansions = -1;
    double timeout_s = 0;
    size_t cap = dcs::kDefaultComposeCap;
    std::vector<int> machines{4, 5, 6}, workloads{1, 2, 3}, capacities{1, 2, 3};
    std::string bench_engine = "dcs";
    double bench_timeout_s = 300;

    auto add_params = [&](CLI::App* cmd) {
        cmd->add_option("--param", params, "constant override NAME=INT (repeatable)");
    };

    CLI::App* synth = app.add_subcommand("synth", "synthesize a controller from an .fsp model");
    synth->add_option("file", file, "model file")->required();
    add_params(synth);
    synth->add_option("-o,--output", output, "output path (default stdout)");
    synth->add_option("--format", format_synth, "controller format")
        ->check(CLI::IsMember({"aut", "dot"}));
    synth->add_option("--max-expansions", max_expansions, "cap on expanded states");
    synth->add_option("--timeout-s", timeout_s, "wall-clock cap in seconds");
    synth->add_option("--stats", stats_file, "duplicate the stats JSON line to a file");

    CLI::App* oracle = app.add_subcommand("oracle", "solve the game on the explicit product");
    oracle->add_option("file", file, "model file")->required();
    add_params(oracle);
    oracle->add_option("--cap", cap, "product state cap");
    oracle->add_option("--timeout-s", timeout_s, "wall-clock cap in seconds");

    CLI::App* verify = app.add_subcommand("verify", "check a controller against a model");
    verify->add_option("file", file, "model file")->required();
    verify->add_option("controller", controller_path, "controller in .aut format")->required();
    add_params(verify);
    verify->add_option("--format", format_verify, "report format")
        ->check(CLI::IsMember({"text", "json"}));
    verify->add_option("--cap", cap, "closed-loop state cap");

    CLI::App* compose = app.add_subcommand("compose", "write the explicit parallel composition");
    compose->add_option("file", file, "model file")->required();
    add_params(compose);
    compose->add_option("-o,--output", output, "output path (default stdout)");
    compose->add_option("--format", format_compose, "output format")
        ->check(CLI::IsMember({"aut", "dot"}));
    compose->add_option("--cap", cap, "product state cap");

    CLI::App* bench = app.add_subcommand("bench", "run the transfer-line benchmark grid");
    bench->add_option("-M,--machines", machines, "machine counts")->delimiter(',');
    bench->add_option("-W,--workloads", workloads, "workload values")->delimiter(',');
    bench->add_option("-C,--capacities", capacities, "buffer capacities")->delimiter(',');
    bench->add_option("--engine", bench_engine, "engine selection")
        ->check(CLI::IsMember({"dcs", "oracle", "both"}));
    bench->add_option("-o,--output", output, "CSV path (default stdout)");
    bench->add_option("--timeout-s", bench_timeout_s, "per-row wall-clock cap in seconds");
    bench->add_option("--max-expansions", max_expansions, "per-row cap on expanded states");
    bench->add_option("--cap", cap, "product state cap");

    CLI::App* graph = app.add_subcommand("graph", "dump the abstracting path graph as DOT");
    graph->add_option("file", file, "model file")->required();
    add_params(graph);
    graph->add_option("--at", at, "composite state as comma-separated per-component state ids");
    graph->add_option("-o,--output", output, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (synth->parsed())
            return run_synth(file, params, output, format_synth, max_expansions, timeout_s,
                             stats_file);
        if (oracle->parsed())
            return run_oracle(file, params, cap, timeout_s);
        if (verify->parsed())
            return run_verify(file, controller_path, params, format_verify, cap);
        if (compose->parsed())
            return run_compose(file, params, output, format_compose, cap);
        if (bench->parsed())
            return run_bench_cmd(machines, workloads, capacities, bench_engine, output,
                                 bench_timeout_s, max_expansions, cap);
        if (graph->parsed())
            return run_graph(file, params, at, output);
    } catch (const dcs::CapacityError& e) {
        std::cerr << e.what() << '\n';
        return kExitCap;
    } catch (const dcs::Error& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "E-INTERNAL: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
