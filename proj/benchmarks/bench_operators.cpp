#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "kirlab/continuum.hpp"
#include "kirlab/dyadic.hpp"
#include "kirlab/graph.hpp"
#include "kirlab/lattice.hpp"

using namespace kirlab;

namespace {

GraphSystem make_chain(std::size_t n) {
    std::vector<Point> nodes;
    std::vector<double> weights(n, 1.0);
    for (std::size_t k = 0; k < n; ++k) nodes.push_back(Point::scalar(0.5 * k));
    CouplingWeights w(true);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        w.add(k, k + 1, 1.0);
        w.add(k + 1, k, 1.0);
    }
    return GraphSystem(NodeMeasure(std::move(nodes), std::move(weights)), std::move(w));
}

void GraphLaplacian(benchmark::State& state) {
    const GraphSystem sys = make_chain(static_cast<std::size_t>(state.range(0)));
    const ScalarField f = ScalarField::of_1d([](double x) { return std::sin(x); });
    for (auto _ : state) {
        auto out = laplacian(sys, f);
        benchmark::DoNotOptimize(out);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(GraphLaplacian)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void LatticeConstant(benchmark::State& state) {
    for (auto _ : state) {
        auto b = frac_lattice_constant(1, 1.0, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(b);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(LatticeConstant)->RangeMultiplier(10)->Range(100, 100000)->Complexity();

void FracLaplacian1D(benchmark::State& state) {
    const LatticeSpec spec(1, 0.25, 64);
    const FracSpec fs = FracSpec::make(1, 0.8, static_cast<int>(state.range(0)));
    ScalarField f = ScalarField::of_1d([](double x) { return 1.0 / (1.0 + x * x); });
    f.sup_bound = 1.0;
    for (auto _ : state) {
        auto out = frac_laplacian(spec, fs, f, {0});
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(FracLaplacian1D)->Arg(64)->Arg(512)->Arg(4096);

void DeltaSClosedForm(benchmark::State& state) {
    HaarExpansion e;
    std::mt19937 rng(7u);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int j = -2; j < static_cast<int>(state.range(0)); ++j)
        for (std::int64_t k = 0; k < 4; ++k) e.add(j, k, coef(rng));
    for (auto _ : state) {
        double v = delta_s_apply(0.25, e, 0.4375);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(DeltaSClosedForm)->Arg(2)->Arg(6)->Arg(10);

void FracKirRegular(benchmark::State& state) {
    const FracKernelSpec spec = FracKernelSpec::make(1, 0.25);
    TwoPointField phi([](const Point& x, const Point& y) {
        const double bx = std::max(0.0, 1.0 - x[0] * x[0]);
        const double by = std::max(0.0, 1.0 - y[0] * y[0]);
        return bx * bx * bx * (y[0] - x[0]) * by * by * by;
    });
    phi.sup_bound = 2.0;
    phi.support_radius = 1.0;
    for (auto _ : state) {
        auto out = frac_kir_regular(spec, phi, Point::scalar(0.2));
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(FracKirRegular);

void HilbertPv(benchmark::State& state) {
    ScalarField f = ScalarField::of_1d([](double y) { return 1.0 / (1.0 + y * y); });
    for (auto _ : state) {
        double v = hilbert_pv(f, 1.0);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(HilbertPv);

} // namespace

BENCHMARK_MAIN();
