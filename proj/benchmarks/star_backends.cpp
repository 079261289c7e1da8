#include <cmath>
#include <numbers>
#include <random>

#include <benchmark/benchmark.h>

#include "mf/models.hpp"
#include "mf/poly_symbol.hpp"
#include "mf/star.hpp"

namespace {

using namespace mf;

SymbolField gaussian(const PhaseGrid& g, double x0) {
    return sample_symbol(g, [=](double x, double p) {
        return cplx(std::exp(-((x - x0) * (x - x0) + p * p) / 2) / std::numbers::pi, 0.0);
    });
}

PolySymbol random_poly(std::mt19937_64& rng, int degree) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PolySymbol a;
    for (int dx = 0; dx <= degree; ++dx)
        for (int dp = 0; dx + dp <= degree; ++dp) a.add_term({dx, dp, 0}, cplx(u(rng), u(rng)));
    return a;
}

void bm_exact_poly(benchmark::State& state) {
    std::mt19937_64 rng(3);
    const int degree = static_cast<int>(state.range(0));
    const PolySymbol a = random_poly(rng, degree), b = random_poly(rng, degree);
    for (auto _ : state) benchmark::DoNotOptimize(poly_star(a, b));
}
BENCHMARK(bm_exact_poly)->DenseRange(2, 8, 2);

void bm_kernel(benchmark::State& state) {
    const PhaseGrid g = make_grid(static_cast<int>(state.range(0)), -12, 12, 1);
    const SymbolField a = gaussian(g, -0.5).without_kernel(), b = gaussian(g, 0.5).without_kernel();
    for (auto _ : state) benchmark::DoNotOptimize(kernel_star(a, b));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_kernel)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond)->Complexity();

void bm_series(benchmark::State& state) {
    const PhaseGrid g = make_grid(static_cast<int>(state.range(0)), -12, 12, 1);
    const SymbolField a = gaussian(g, -0.5), b = gaussian(g, 0.5);
    const int order = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(series_star(a, b, order));
}
BENCHMARK(bm_series)
    ->ArgsProduct({{64, 128, 256}, {2, 8}})
    ->Unit(benchmark::kMillisecond);

void bm_bessel_row(benchmark::State& state) {
    for (auto _ : state) {
        double s = 0;
        for (int k = 0; k < 64; ++k) s += bessel_k_imag(0.25 * k, 0.3);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(bm_bessel_row)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
