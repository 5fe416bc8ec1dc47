#include <benchmark/benchmark.h>

#include <string>

#include "attctl/analysis.hpp"
#include "attctl/controller.hpp"
#include "attctl/scenario.hpp"
#include "attctl/sim.hpp"

namespace {

const attctl::ScenarioConfig& reference() {
    static const attctl::ScenarioConfig c =
        attctl::load_scenario(std::string(ATTCTL_SCENARIO_DIR) + "/reference.scenario");
    return c;
}

// Cost of one second of simulated time (1000 control steps at dt = 1 ms).
void BM_SimSecond(benchmark::State& state) {
    attctl::ScenarioConfig config = reference();
    config.t_end = 1.0;
    for (auto _ : state) {
        attctl::Trace t = attctl::SimEngine(config).run();
        benchmark::DoNotOptimize(t.records.data());
    }
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_SimSecond)->Unit(benchmark::kMillisecond);

// Full reference episode (1e5 steps), the acceptance-runtime workload.
void BM_FullEpisode(benchmark::State& state) {
    for (auto _ : state) {
        attctl::Trace t = attctl::SimEngine(reference()).run();
        benchmark::DoNotOptimize(t.summary.settling_time);
    }
}
BENCHMARK(BM_FullEpisode)->Unit(benchmark::kMillisecond)->Iterations(3);

// Feasibility-constant derivation (dense funnel sampling dominates).
void BM_DeriveConstants(benchmark::State& state) {
    for (auto _ : state) {
        attctl::DerivedConstants k = attctl::derive_constants(reference(), 0.5);
        benchmark::DoNotOptimize(k.a0);
    }
}
BENCHMARK(BM_DeriveConstants)->Unit(benchmark::kMillisecond);

// Virtual-control evaluation, the per-step hot path.
void BM_VirtualControl(benchmark::State& state) {
    const attctl::ScenarioConfig& c = reference();
    const attctl::FunnelMatrices f = attctl::funnel_matrices(10.0, c.funnel);
    const attctl::UnitQuaternion q_e{{0.46, -0.40, 0.30}, 0.7323};
    const attctl::Vec3 eps{0.46, -0.40, 0.30};
    for (auto _ : state) {
        attctl::Vec3 a = attctl::virtual_control(q_e, eps, f, c.controller);
        benchmark::DoNotOptimize(a.x);
    }
}
BENCHMARK(BM_VirtualControl);

}  // namespace

BENCHMARK_MAIN();
