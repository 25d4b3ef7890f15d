// Acceptance suite: one self-contained check per release criterion,
// printed as a PASS/FAIL line. Exits nonzero if any check fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "dcs/abstraction.hpp"
#include "dcs/aut.hpp"
#include "dcs/compose.hpp"
#include "dcs/engine.hpp"
#include "dcs/fsp/elaborate.hpp"
#include "dcs/fsp/parser.hpp"
#include "dcs/oracle.hpp"
#include "dcs/transfer_line.hpp"
#include "support/fixtures.hpp"
#include "support/naive.hpp"
#include "support/random_problems.hpp"
#include "support/replay.hpp"

using namespace dcs;
using namespace dcs::test;

namespace {

struct Harness {
    int failures = 0;
    int index = 0;

    void run(const std::string& name, const std::function<void(std::ostringstream&)>& body) {
        ++index;
        std::ostringstream detail;
        bool ok = true;
        std::string error;
        auto start = std::chrono::steady_clock::now();
        try {
            body(detail);
        } catch (const std::exception& e) {
            ok = false;
            error = e.what();
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        if (!ok)
            ++failures;
        std::cout << (ok ? "PASS" : "FAIL") << "  C" << index << "  " << name << "  [" << ms
                  << " ms]";
        if (!detail.str().empty())
            std::cout << "  (" << detail.str() << ")";
        std::cout << '\n';
        if (!ok)
            std::cout << "      " << error << '\n';
    }
};

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
    if (!condition)
        throw CheckFailure(message);
}

template <typename T>
void require_eq(const T& got, const T& want, const std::string& what) {
    if (!(got == want)) {
        std::ostringstream os;
        os << what << ": got " << got << ", want " << want;
        throw CheckFailure(os.str());
    }
}

std::string vname(const ControlProblem& problem, VertexId v) {
    ComponentStateRef ref = vertex_ref(problem.index(), v);
    const Lts& lts = problem.component(ref.component);
    return lts.name + ":" + lts.state_name(ref.state);
}

std::set<std::string> cumulative_frontier(const ControlProblem& problem,
                                          const AbstractionResult& res, size_t upto) {
    std::set<std::string> out;
    for (size_t g = 0; g <= upto && g < res.frontier_additions.size(); ++g)
        for (VertexId v : res.frontier_additions[g])
            out.insert(vname(problem, v));
    return out;
}

std::set<std::string> action_set(const ControlProblem& problem, const AbstractionResult& res,
                                 size_t upto) {
    std::vector<VertexId> frontier;
    for (size_t g = 0; g <= upto && g < res.frontier_additions.size(); ++g)
        for (VertexId v : res.frontier_additions[g])
            frontier.push_back(v);
    std::set<std::string> out;
    for (LabelId l : relaxed_enabled_labels(problem.index(), frontier))
        out.insert(problem.index().label(l).str());
    return out;
}

ControlProblem transfer_line_problem(int m, int w, int c) {
    fsp::Elaboration elab = fsp::elaborate(fsp::parse(generate_transfer_line(m, w, c)));
    return std::move(*elab.problem);
}

constexpr uint64_t kSuiteSeedBase = 31000;
constexpr int kSuiteInstances = 500;

// Criterion 1: the worked micro-examples — the single-LTS abstraction
// set sequence, the abstracting composition's action sets, the
// generations, and the initial ranking b=2, c=2, a=inf.
void criterion1(std::ostringstream& detail) {
    auto start = std::chrono::steady_clock::now();

    ControlProblem ei_only({make_ei()}, labels({"a", "b", "d"}), labels({"d"}), {});
    AbstractionResult ra = build_abstraction(ei_only, ei_only.index().initial_state());
    require_eq(ra.frontier_additions.size(), size_t{3}, "EI abstraction growth steps");
    require(cumulative_frontier(ei_only, ra, 0) == std::set<std::string>{"EI:s0"}, "EI q0");
    require(cumulative_frontier(ei_only, ra, 1) ==
                std::set<std::string>{"EI:s0", "EI:s1", "EI:s2"},
            "EI q1");
    require(cumulative_frontier(ei_only, ra, 2) ==
                std::set<std::string>{"EI:s0", "EI:s1", "EI:s2", "EI:s3"},
            "EI q2");
    require(action_set(ei_only, ra, 0) == std::set<std::string>{"a", "b"}, "EI actions 0");
    require(action_set(ei_only, ra, 1) == std::set<std::string>{"a", "b", "d"}, "EI actions 1");
    require(action_set(ei_only, ra, 2) == std::set<std::string>{"a", "b", "d"},
            "EI final self-loop actions");

    ControlProblem pair = ei_eii_problem();
    AbstractionResult rb = build_abstraction(pair, pair.index().initial_state());
    require(action_set(pair, rb, 0) == std::set<std::string>{"a", "b", "c"},
            "EI#EII first action set");
    require(action_set(pair, rb, 1) == std::set<std::string>{"a", "b", "c", "d"},
            "EI#EII second action set");

    std::map<std::string, int> generations;
    for (VertexId v = 0; v < static_cast<VertexId>(rb.generation.size()); ++v)
        if (rb.generation[v] >= 0)
            generations[vname(pair, v)] = rb.generation[v];
    std::map<std::string, int> expected{{"EI:s0", 0},  {"EI:s1", 1},  {"EI:s2", 1},
                                        {"EI:s3", 2},  {"EII:t0", 0}, {"EII:t1", 1},
                                        {"EII:t2", 1}};
    require(generations == expected, "generation map mismatch on the worked example");

    ActionRanking ranking = rank_actions(pair, pair.index().initial_state());
    require_eq(ranking.entries.size(), size_t{3}, "ranked action count");
    std::map<std::string, uint32_t> estimates;
    for (const RankedAction& e : ranking.entries)
        estimates[pair.index().label(e.label).str()] = e.estimate;
    require(estimates ==
                std::map<std::string, uint32_t>{{"b", 2}, {"c", 2}, {"a", kInfiniteEstimate}},
            "initial ranking must be b=2, c=2, a=inf");

    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    require(ms < 1000, "criterion 1 must run in under a second");
    detail << "worked examples reproduced in " << ms << " ms";
}

// Criterion 2: admissibility on the random suite — every finite estimate
// bounded by the true distance, every infinite estimate without witness.
void criterion2(std::ostringstream& detail) {
    auto start = std::chrono::steady_clock::now();
    int64_t checked = 0;
    int winnable = 0;
    for (int i = 0; i < kSuiteInstances; ++i) {
        RandomProblem rp = make_random_problem(kSuiteSeedBase + i);
        ControlProblem problem = rp.to_problem();
        NaiveProduct product = naive_compose(rp.components);
        std::vector<int> dist =
            naive_discharge_distance(product, rp.reach_text(), rp.avoid_text());
        if (dist[product.initial] != kNaiveInf)
            ++winnable;
        for (size_t s = 0; s < product.states.size(); ++s) {
            CompositeState cs(product.states[s].begin(), product.states[s].end());
            for (const RankedAction& entry : rank_actions(problem, cs).entries) {
                ++checked;
                std::string text = problem.index().label(entry.label).str();
                int truth = naive_action_distance(product, dist, static_cast<int>(s), text,
                                                  rp.reach_text(), rp.avoid_text());
                if (entry.estimate == kInfiniteEstimate) {
                    require(truth == kNaiveInf,
                            "infinite estimate with a finite witness (seed " +
                                std::to_string(kSuiteSeedBase + i) + ", state " +
                                std::to_string(s) + ", label " + text + ")");
                } else if (truth != kNaiveInf) {
                    require(entry.estimate <= static_cast<uint32_t>(truth),
                            "estimate exceeds the true distance (seed " +
                                std::to_string(kSuiteSeedBase + i) + ", state " +
                                std::to_string(s) + ", label " + text + ")");
                }
            }
        }
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    require(ms < 300000, "criterion 2 must finish within five minutes");
    require(winnable > 50, "suite health: too few dischargeable instances");
    detail << checked << " estimates over " << kSuiteInstances << " instances, " << ms << " ms";
}

// Criterion 3: frontier growth bounded by the total component state
// count on every suite instance.
void criterion3(std::ostringstream& detail) {
    size_t worst_states = 0;
    for (int i = 0; i < kSuiteInstances; ++i) {
        RandomProblem rp = make_random_problem(kSuiteSeedBase + i);
        ControlProblem problem = rp.to_problem();
        NaiveProduct product = naive_compose(rp.components);
        size_t total = problem.index().total_states();
        for (size_t s = 0; s < product.states.size(); ++s) {
            CompositeState cs(product.states[s].begin(), product.states[s].end());
            AbstractionResult res = build_abstraction(problem, cs);
            require(res.growth_steps() <= total,
                    "frontier growth exceeded the component state total (seed " +
                        std::to_string(kSuiteSeedBase + i) + ")");
            worst_states = std::max(worst_states, total);
        }
    }
    detail << "bound held on every reachable state; largest vertex space " << worst_states;
}

// Criterion 4: sampled product traces replay as abstracting paths.
void criterion4(std::ostringstream& detail) {
    int64_t traces = 0;
    for (int i = 0; i < kSuiteInstances; ++i) {
        RandomProblem rp = make_random_problem(kSuiteSeedBase + i);
        ControlProblem problem = rp.to_problem();
        AbstractionResult res = build_abstraction(problem, problem.index().initial_state());
        NaiveProduct product = naive_compose(rp.components);
        SplitMix rng(kSuiteSeedBase + i);
        for (const auto& trace : sample_traces(product, rp.avoid_text(), rng, 100, 14)) {
            ++traces;
            require(replayable(problem, res, trace),
                    "product trace is not an abstracting path (seed " +
                        std::to_string(kSuiteSeedBase + i) + ")");
        }
    }
    detail << traces << " traces replayed";
}

// Criterion 5: the directed engine and the monolithic fixpoint agree on
// every suite instance, and every controller passes the verifier.
void criterion5(std::ostringstream& detail) {
    int controllers = 0, refusals = 0;
    for (int i = 0; i < kSuiteInstances; ++i) {
        RandomProblem rp = make_random_problem(kSuiteSeedBase + i);
        ControlProblem problem = rp.to_problem();
        GameSolution sol = solve_monolithic(problem);
        SynthesisResult result = synthesize(problem);
        bool engine_wins = result.verdict == SynthesisVerdict::Controller;
        require(engine_wins == sol.initial_winning,
                "engine and oracle disagree (seed " + std::to_string(kSuiteSeedBase + i) + ")");
        if (engine_wins) {
            ++controllers;
            VerificationReport report = verify_controller(problem, result.controller->lts);
            require(report.ok, "synthesized controller failed verification (seed " +
                                   std::to_string(kSuiteSeedBase + i) + ")");
        } else {
            ++refusals;
        }
    }
    require(controllers >= 50 && refusals >= 50,
            "suite health: need both verdicts well represented");
    detail << controllers << " controllers, " << refusals << " refusals, all verified";
}

// Criterion 6: the transfer line (2,1,1) regression — the exact
// seven-state cyclic controller, verifier-accepted, in under a second.
void criterion6(std::ostringstream& detail) {
    auto start = std::chrono::steady_clock::now();
    ControlProblem problem = transfer_line_problem(2, 1, 1);
    SynthesisResult result = synthesize(problem);
    require(result.verdict == SynthesisVerdict::Controller, "TL(2,1,1) must be solvable");
    require_eq(to_aut(result.controller->lts),
               std::string("des (0,8,7)\n"
                           "(0,\"get.0\",1)\n"
                           "(1,\"put.1\",2)\n"
                           "(2,\"get.1\",3)\n"
                           "(3,\"put.2\",4)\n"
                           "(4,\"get.2\",5)\n"
                           "(5,\"accept\",0)\n"
                           "(5,\"ret.1\",6)\n"
                           "(6,\"reject\",2)\n"),
               "TL(2,1,1) controller");
    require(verify_controller(problem, result.controller->lts).ok,
            "TL(2,1,1) controller must verify");
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    require(ms < 1000, "criterion 6 must run in under a second");
    detail << "7-state chain with accept/reject cycles, " << ms << " ms, expanded "
           << result.stats.expanded;
}

// Criterion 7: the small-scale grid M in {4,5,6}, W in {1,2,3},
// C in {1,2,3} — all solved with verified controllers, each within the
// desk-scale budget, and (6,3,3) expanding fewer than 1e5 states.
void criterion7(std::ostringstream& detail) {
    auto grid_start = std::chrono::steady_clock::now();
    int64_t worst_ms = 0, expanded633 = -1;
    double biggest_bound = 0;
    for (int m : {4, 5, 6})
        for (int w : {1, 2, 3})
            for (int c : {1, 2, 3}) {
                auto start = std::chrono::steady_clock::now();
                ControlProblem problem = transfer_line_problem(m, w, c);
                SynthesisResult result = synthesize(problem);
                auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - start)
                              .count();
                std::string tag = "(" + std::to_string(m) + "," + std::to_string(w) + "," +
                                  std::to_string(c) + ")";
                require(result.verdict == SynthesisVerdict::Controller,
                        "no controller for TL" + tag);
                require(verify_controller(problem, result.controller->lts).ok,
                        "controller for TL" + tag + " failed verification");
                require(ms <= 30000, "TL" + tag + " exceeded 30 s");
                worst_ms = std::max(worst_ms, ms);
                double bound = 1;
                for (size_t k = 0; k < problem.n_components(); ++k)
                    bound *= static_cast<double>(problem.component(k).n_states());
                biggest_bound = std::max(biggest_bound, bound);
                if (m == 6 && w == 3 && c == 3) {
                    expanded633 = result.stats.expanded;
                    require(result.stats.expanded < 100000,
                            "TL(6,3,3) expanded too much of the state space");
                }
            }
    auto grid_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - grid_start)
                       .count();
    require(grid_ms <= 600000, "the full grid must finish within ten minutes");
    std::ostringstream bound_text;
    bound_text.precision(2);
    bound_text << std::scientific << biggest_bound;
    detail << "27/27 solved+verified, worst row " << worst_ms << " ms, grid " << grid_ms
           << " ms, TL(6,3,3) expanded " << expanded633 << " of ~" << bound_text.str()
           << " product states";
}

// Criterion 8: historical wall-clock measurements are hardware-bound
// and are replaced by criteria 1-7; the big grid stays an opt-in script.
void criterion8(std::ostringstream& detail) {
    detail << "wall-clock table not reproduced by design; combinatorial artifacts in C1-C7, "
              "big grid via scripts/big_scale.sh";
}

} // namespace

int main() {
    Harness harness;
    harness.run("worked-example fidelity (single and composed abstraction micro-models)",
                criterion1);
    harness.run("admissibility over the random suite", criterion2);
    harness.run("abstraction size bound", criterion3);
    harness.run("trace containment", criterion4);
    harness.run("engine/oracle agreement with verified controllers", criterion5);
    harness.run("transfer line (2,1,1) seven-state regression", criterion6);
    harness.run("small-scale transfer-line grid", criterion7);
    harness.run("historical wall-clock numbers substituted", criterion8);
    if (harness.failures) {
        std::cout << harness.failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance criteria passed\n";
    return 0;
}
