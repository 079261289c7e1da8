#include <benchmark/benchmark.h>

#include "mf/models.hpp"
#include "mf/spectra_oracle.hpp"
#include "mf/susy_ladder.hpp"

namespace {

using namespace mf;

void bm_oscillator_sequence(benchmark::State& state) {
    const PhaseGrid g = make_grid(static_cast<int>(state.range(0)), -8, 8, 1);
    const ShapeInvariantModel m = make_sho_model();
    for (auto _ : state) benchmark::DoNotOptimize(build_wigner_sequence(m, g, 5));
}
BENCHMARK(bm_oscillator_sequence)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void bm_morse_closed_forms(benchmark::State& state) {
    const PhaseGrid g = make_grid(256, -4, 12, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(morse_p0({5, 1, 1}, g));
        benchmark::DoNotOptimize(morse_p1({5, 1, 1}, g));
    }
}
BENCHMARK(bm_morse_closed_forms)->Unit(benchmark::kMillisecond);

void bm_morse_oracle(benchmark::State& state) {
    const PhaseGrid g = make_grid(static_cast<int>(state.range(0)), -4, 12, 1);
    const ShapeInvariantModel m = make_morse_model();
    const auto v = partner_potentials(m, m.a0).v_minus;
    for (auto _ : state) benchmark::DoNotOptimize(eigensolve_lowest(discretize_hamiltonian(v, g), 5));
}
BENCHMARK(bm_morse_oracle)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
