#include <benchmark/benchmark.h>

#include <random>

#include "kato/fields/kernels.hpp"

using namespace kato;

namespace {

ScalarField noise(const Grid& g, Stagger s, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    ScalarField f(g, s);
    for (double& x : f.values()) x = d(gen);
    return f;
}

VelocityField velocity(const Grid& g, unsigned seed) {
    return VelocityField(noise(g, Stagger::u_face, seed), noise(g, Stagger::v_face, seed + 1),
                         BoundaryCondition::no_slip);
}

template <auto Kernel>
void advect(benchmark::State& st) {
    const Grid g = Grid::make(static_cast<int>(st.range(0)), static_cast<int>(st.range(0)));
    const VelocityField a = velocity(g, 1), w = velocity(g, 3);
    VelocityField out(g, w.bc);
    for (auto _ : st) {
        Kernel(a, w, out);
        benchmark::DoNotOptimize(out.u.values().data());
    }
}

template <auto Kernel>
void laplacian(benchmark::State& st) {
    const Grid g = Grid::make(static_cast<int>(st.range(0)), static_cast<int>(st.range(0)));
    const VelocityField w = velocity(g, 5);
    VelocityField out(g, w.bc);
    for (auto _ : st) {
        Kernel(w, out);
        benchmark::DoNotOptimize(out.u.values().data());
    }
}

template <auto Kernel>
void arakawa(benchmark::State& st) {
    const Grid g = Grid::make(static_cast<int>(st.range(0)), static_cast<int>(st.range(0)));
    const ScalarField p = noise(g, Stagger::node, 7), q = noise(g, Stagger::node, 8);
    ScalarField out(g, Stagger::node);
    for (auto _ : st) {
        Kernel(p, q, out);
        benchmark::DoNotOptimize(out.values().data());
    }
}

template <auto Kernel>
void dot(benchmark::State& st) {
    const Grid g = Grid::make(static_cast<int>(st.range(0)), static_cast<int>(st.range(0)));
    const ScalarField p = noise(g, Stagger::cell, 9), q = noise(g, Stagger::cell, 10);
    for (auto _ : st) benchmark::DoNotOptimize(Kernel(p, q).total());
}

}  // namespace

BENCHMARK(advect<kernels::serial::advect>)->Name("advect/serial")->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(advect<kernels::omp::advect>)->Name("advect/omp")->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(laplacian<kernels::serial::laplacian>)->Name("laplacian/serial")->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(laplacian<kernels::omp::laplacian>)->Name("laplacian/omp")->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(arakawa<kernels::serial::arakawa>)->Name("arakawa/serial")->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(arakawa<kernels::omp::arakawa>)->Name("arakawa/omp")->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(dot<kernels::serial::dot_rows>)->Name("dot_rows/serial")->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(dot<kernels::omp::dot_rows>)->Name("dot_rows/omp")->RangeMultiplier(2)->Range(64, 512);

BENCHMARK_MAIN();
