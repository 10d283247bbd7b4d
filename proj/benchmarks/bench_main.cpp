#include <benchmark/benchmark.h>

#include <memory>
#include <numbers>

#include "bonnet/bonnet_pair.hpp"
#include "bonnet/discrete.hpp"
#include "bonnet/periodicity.hpp"
#include "bonnet/spherical.hpp"
#include "bonnet/theta.hpp"

using namespace bonnet;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kLambda = 0.3205128205;
constexpr double kS1 = -3.601381552;
const SphericalParams kThree{1.897366596, kS1, 0.5965202011};

void BM_theta1(benchmark::State& st) {
    const RhombicLattice lat(kLambda);
    double x = 0.1;
    for (auto _ : st) {
        benchmark::DoNotOptimize(lat.theta(1, cplx(x, -0.2), static_cast<int>(st.range(0))));
        x += 1e-6;
    }
}
BENCHMARK(BM_theta1)->DenseRange(0, 3);

void BM_critical_omega(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(critical_omega(RhombicLattice(kLambda)).omega);
}
BENCHMARK(BM_critical_omega)->Unit(benchmark::kMicrosecond);

void BM_lambda0(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(lambda0());
}
BENCHMARK(BM_lambda0)->Unit(benchmark::kMillisecond);

void BM_periodicity_integrals(benchmark::State& st) {
    const LameData lame(kLambda);
    for (auto _ : st) {
        benchmark::DoNotOptimize(theta_integral(lame, kThree));
        benchmark::DoNotOptimize(bpart_integral(lame, kThree));
    }
}
BENCHMARK(BM_periodicity_integrals)->Unit(benchmark::kMillisecond);

void BM_frame_integration(benchmark::State& st) {
    const PlanarFamily fam(kLambda);
    const auto rep = std::make_shared<SphericalReparam>(fam.lame(), kThree);
    for (auto _ : st) {
        const FrameCurve fc(fam, rep, 1, static_cast<int>(st.range(0)));
        benchmark::DoNotOptimize(fc.monodromy());
    }
}
BENCHMARK(BM_frame_integration)->RangeMultiplier(4)->Range(256, 4096)->Unit(benchmark::kMillisecond);

void BM_solve_spherical(benchmark::State& st) {
    const LameData lame(kLambda);
    for (auto _ : st) benchmark::DoNotOptimize(solve_spherical(lame, 2 * pi / 3, kS1).params.delta);
}
BENCHMARK(BM_solve_spherical)->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_pair_eval(benchmark::State& st) {
    const PlanarFamily fam(kLambda);
    const auto rep = std::make_shared<SphericalReparam>(fam.lame(), kThree);
    const FrameCurve fc(fam, rep, 6, 4096);
    const IsothermicSurface surf(fam, fc);
    const BonnetAssembly pair(surf, 1.0);
    const auto line = pair.line(1.3);
    double u = 0;
    for (auto _ : st) {
        benchmark::DoNotOptimize(pair.eval(u, line));
        u += 1e-3;
    }
}
BENCHMARK(BM_pair_eval);

void BM_torus_residuals(benchmark::State& st) {
    DiscreteNet net;
    net.n = 9;
    net.m = 12;
    net.periodic = {true, true};
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 12; ++j) {
            const double a = 2 * pi * i / 9, b = 2 * pi * j / 12;
            net.vertices.emplace_back((2 + std::cos(b)) * std::cos(a), (2 + std::cos(b)) * std::sin(a), std::sin(b));
        }
    for (auto _ : st) benchmark::DoNotOptimize(torus_residuals(net, {}));
}
BENCHMARK(BM_torus_residuals)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
