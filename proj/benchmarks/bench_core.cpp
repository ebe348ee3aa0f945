#include "annuli/energy.hpp"
#include "annuli/sphere_maps.hpp"
#include "annuli/variational.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

using namespace annuli;

namespace {

const AnnulusPair kPair(1.0, 2.0, 1.0, std::numbers::e);

void BM_WeightedEnergyRadial(benchmark::State& state) {
    const auto order = static_cast<std::size_t>(state.range(0));
    const GeneralizedRadialMap f{exp_profile_from_boundary(kPair, Orientation::Increasing),
                                 MobiusTransform::identity(), kPair.domain};
    for (auto _ : state) benchmark::DoNotOptimize(weighted_energy(f, kPair, {2 * order, order}).value);
}
BENCHMARK(BM_WeightedEnergyRadial)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_WeightedEnergySampled(benchmark::State& state) {
    const SampledMap f = make_competitor(kPair, CompetitorSpec{});
    for (auto _ : state) benchmark::DoNotOptimize(weighted_energy(f, kPair, {32, 16}).value);
}
BENCHMARK(BM_WeightedEnergySampled)->Unit(benchmark::kMillisecond);

void BM_TridiagonalMinimizer(benchmark::State& state) {
    const RadialGrid g = make_radial_grid(kPair.domain, static_cast<std::size_t>(state.range(0)), Spacing::UniformT);
    for (auto _ : state) benchmark::DoNotOptimize(minimize_reduced_energy(kPair, g).energy);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TridiagonalMinimizer)->RangeMultiplier(4)->Range(256, 65536)->Complexity(benchmark::oN);

void BM_Shooting(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(shoot_el(kPair).initial_slope);
}
BENCHMARK(BM_Shooting)->Unit(benchmark::kMillisecond);

void BM_SphereQuadratureBuild(benchmark::State& state) {
    const auto order = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(make_sphere_quadrature(order).weights.size());
}
BENCHMARK(BM_SphereQuadratureBuild)->Arg(16)->Arg(32)->Arg(64);

void BM_SphereInequalityIntegral(benchmark::State& state) {
    Rng rng(1);
    const MobiusTransform t = random_mobius(rng);
    const SphericalQuadrature q = make_sphere_quadrature(32);
    for (auto _ : state) benchmark::DoNotOptimize(sphere_inequality_integral(t, 2.0, q));
}
BENCHMARK(BM_SphereInequalityIntegral);

void BM_MobiusApply(benchmark::State& state) {
    Rng rng(2);
    const MobiusTransform t = random_mobius(rng);
    const SpherePoint p = rng.unit_vector();
    for (auto _ : state) benchmark::DoNotOptimize(t.apply(p).vec());
}
BENCHMARK(BM_MobiusApply);

}  // namespace

BENCHMARK_MAIN();
