#include <benchmark/benchmark.h>

#include "dcs/abstraction.hpp"
#include "dcs/compose.hpp"
#include "dcs/engine.hpp"
#include "dcs/fsp/elaborate.hpp"
#include "dcs/fsp/parser.hpp"
#include "dcs/oracle.hpp"
#include "dcs/transfer_line.hpp"

namespace {

dcs::ControlProblem transfer_line(int m, int w, int c) {
    auto elab = dcs::fsp::elaborate(dcs::fsp::parse(dcs::generate_transfer_line(m, w, c)));
    return std::move(*elab.problem);
}

void BM_Elaborate(benchmark::State& state) {
    std::string text = dcs::generate_transfer_line(static_cast<int>(state.range(0)), 2, 2);
    dcs::fsp::SpecAst ast = dcs::fsp::parse(text);
    for (auto _ : state)
        benchmark::DoNotOptimize(dcs::fsp::elaborate(ast));
}
BENCHMARK(BM_Elaborate)->Arg(4)->Arg(16)->Arg(64);

void BM_EnabledInitial(benchmark::State& state) {
    dcs::ControlProblem problem = transfer_line(static_cast<int>(state.range(0)), 2, 2);
    dcs::CompositeState initial = problem.index().initial_state();
    std::vector<std::pair<dcs::LabelId, dcs::CompositeState>> out;
    for (auto _ : state) {
        problem.index().enabled(initial, out);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_EnabledInitial)->Arg(4)->Arg(16)->Arg(64);

void BM_BuildAbstraction(benchmark::State& state) {
    dcs::ControlProblem problem = transfer_line(static_cast<int>(state.range(0)), 2, 2);
    dcs::CompositeState initial = problem.index().initial_state();
    for (auto _ : state)
        benchmark::DoNotOptimize(dcs::build_abstraction(problem, initial));
}
BENCHMARK(BM_BuildAbstraction)->Arg(4)->Arg(16)->Arg(64);

void BM_RankActions(benchmark::State& state) {
    dcs::ControlProblem problem = transfer_line(static_cast<int>(state.range(0)), 2, 2);
    dcs::CompositeState initial = problem.index().initial_state();
    for (auto _ : state)
        benchmark::DoNotOptimize(dcs::rank_actions(problem, initial));
}
BENCHMARK(BM_RankActions)->Arg(4)->Arg(16)->Arg(64);

void BM_Synthesize(benchmark::State& state) {
    dcs::ControlProblem problem = transfer_line(static_cast<int>(state.range(0)), 2, 2);
    for (auto _ : state) {
        dcs::SynthesisResult result = dcs::synthesize(problem);
        if (result.verdict != dcs::SynthesisVerdict::Controller)
            state.SkipWithError("expected a controller");
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_Synthesize)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_SolveMonolithic(benchmark::State& state) {
    dcs::ControlProblem problem = transfer_line(static_cast<int>(state.range(0)), 1, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(dcs::solve_monolithic(problem));
}
BENCHMARK(BM_SolveMonolithic)->Arg(2)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
