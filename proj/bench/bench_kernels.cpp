// Serial reference vs OpenMP kernels on the same inputs.
#include <benchmark/benchmark.h>

#include <random>

#include "rsg/kernels.hpp"
#include "rsg/perfectness.hpp"
#include "rsg/rational.hpp"

namespace {

std::vector<rsg::SpherePoint> random_points(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<rsg::SpherePoint> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.emplace_back(g(rng), g(rng));
    return v;
}

std::vector<rsg::cplx> finite(const std::vector<rsg::SpherePoint>& pts) {
    std::vector<rsg::cplx> v;
    for (const auto& p : pts) v.push_back(p.value());
    return v;
}

template <bool Parallel>
void BM_Hausdorff(benchmark::State& st) {
    const auto a = random_points(static_cast<std::size_t>(st.range(0)), 1);
    const auto b = random_points(static_cast<std::size_t>(st.range(0)), 2);
    for (auto _ : st)
        benchmark::DoNotOptimize(Parallel ? rsg::kernels::directed_hausdorff_omp(a, b)
                                          : rsg::kernels::directed_hausdorff_serial(a, b));
}

template <bool Parallel>
void BM_Diameter(benchmark::State& st) {
    const auto a = random_points(static_cast<std::size_t>(st.range(0)), 3);
    for (auto _ : st)
        benchmark::DoNotOptimize(Parallel ? rsg::kernels::diameter_omp(a) : rsg::kernels::diameter_serial(a));
}

template <bool Parallel>
void BM_DerivativeSweep(benchmark::State& st) {
    const rsg::RationalMap f(rsg::Polynomial{0.3, 0.0, 1.0, 0.5}, rsg::Polynomial{1.0, 2.0});
    const auto s = rsg::sphere_samples(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(Parallel ? rsg::kernels::derivative_sweep_omp(f, s)
                                          : rsg::kernels::derivative_sweep_serial(f, s));
}

template <bool Parallel>
void BM_GapScan(benchmark::State& st) {
    const auto pts = finite(random_points(static_cast<std::size_t>(st.range(0)), 4));
    const auto centers = rsg::candidate_centers(pts);
    const std::vector<double> floors{1e-2, 1e-3, 1e-4};
    for (auto _ : st)
        benchmark::DoNotOptimize(Parallel ? rsg::kernels::gap_scan_omp(pts, centers, floors)
                                          : rsg::kernels::gap_scan_serial(pts, centers, floors));
}

}  // namespace

BENCHMARK(BM_Hausdorff<false>)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Hausdorff<true>)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Diameter<false>)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Diameter<true>)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DerivativeSweep<false>)->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DerivativeSweep<true>)->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GapScan<false>)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GapScan<true>)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
