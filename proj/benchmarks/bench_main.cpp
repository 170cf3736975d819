#include <benchmark/benchmark.h>

#include "kicktop/classical.hpp"
#include "kicktop/floquet.hpp"
#include "kicktop/scan.hpp"
#include "kicktop/spin_system.hpp"

using namespace kicktop;

namespace {

void bm_build_floquet(benchmark::State& state) {
    const SpinSystem sys = build_spin_system(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        FloquetOperator op = build_floquet(sys, 3.0);
        benchmark::DoNotOptimize(op.matrix.data());
    }
}
BENCHMARK(bm_build_floquet)->Arg(40)->Arg(160)->Arg(400);

void bm_apply_kick(benchmark::State& state) {
    const SpinSystem sys = build_spin_system(static_cast<int>(state.range(0)));
    const FloquetOperator op = build_floquet(sys, 3.0);
    StateVector psi = coherent_state(sys, {2.0, 0.5});
    for (auto _ : state) {
        psi = apply(op, psi);
        benchmark::DoNotOptimize(psi.amps.data());
    }
}
BENCHMARK(bm_apply_kick)->Arg(40)->Arg(160)->Arg(400);

void bm_evolve_record(benchmark::State& state) {
    const SpinSystem sys = build_spin_system(160);
    const FloquetOperator op = build_floquet(sys, 3.0);
    const int kicks = static_cast<int>(state.range(0));
    for (auto _ : state) {
        EvolutionRecord rec = evolve_record(sys, op, {2.254, 0.44}, kicks);
        benchmark::DoNotOptimize(rec.samples.data());
    }
    state.SetItemsProcessed(state.iterations() * kicks);
}
BENCHMARK(bm_evolve_record)->Arg(50)->Arg(400);

void bm_fbar_field(benchmark::State& state) {
    const GridSpec grid{5, 5};
    for (auto _ : state) {
        ScanField field = fbar_field(3.0, static_cast<int>(state.range(0)), grid, 50);
        benchmark::DoNotOptimize(field.values.data());
    }
}
BENCHMARK(bm_fbar_field)->Arg(40)->Arg(120);

void bm_kick_map(benchmark::State& state) {
    ClassicalState c{0.6, 0.48, 0.64};
    for (auto _ : state) {
        c = kick_map(c, 3.0);
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(bm_kick_map);

void bm_lyapunov(benchmark::State& state) {
    for (auto _ : state) {
        const double lambda = lyapunov_exponent({2.254, 0.44}, 6.0, state.range(0), 100);
        benchmark::DoNotOptimize(lambda);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_lyapunov)->Arg(10000);

} // namespace

BENCHMARK_MAIN();
