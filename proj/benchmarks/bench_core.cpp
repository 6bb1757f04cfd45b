#include <benchmark/benchmark.h>

#include <vector>

#include "grm/dynamics.hpp"
#include "grm/engine.hpp"
#include "grm/perception.hpp"

using namespace grm;

namespace {

std::vector<AgentState> placed_agents(const SimParams& p, std::uint64_t seed) {
    auto streams = make_agent_streams(seed, p.N);
    return init_agents(p, streams);
}

}  // namespace

static void BM_ProjectPoints(benchmark::State& state) {
    SimParams p;
    p.N = static_cast<int>(state.range(0));
    const auto agents = placed_agents(p, 11);
    std::vector<PointPercept> out;
    for (auto _ : state) {
        project_points(agents[0], agents, p, out);
        benchmark::DoNotOptimize(summarize(out));
    }
    state.SetItemsProcessed(state.iterations() * (p.N - 1));
}
BENCHMARK(BM_ProjectPoints)->Arg(2)->Arg(10)->Arg(40);

static void BM_Step(benchmark::State& state) {
    SimParams p;
    p.N = static_cast<int>(state.range(0));
    p.T_grm = 6;
    p.T_loom = 6;
    Simulation sim(p, 12);
    for (auto _ : state) benchmark::DoNotOptimize(sim.step());
}
BENCHMARK(BM_Step)->Arg(10)->Arg(40);

static void BM_Trial(benchmark::State& state) {
    SimParams p;
    p.horizon_steps = state.range(0);
    p.T_grm = 6;
    p.T_loom = 6;
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(run_trial(p, ++seed).counts);
    state.SetItemsProcessed(state.iterations() * p.horizon_steps);
}
BENCHMARK(BM_Trial)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
