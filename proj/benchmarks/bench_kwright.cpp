#include <benchmark/benchmark.h>

#include "kwright/kwright.hpp"

using namespace kwright;

namespace {

const MSMParams kOp{0.5, 0.3, 0.2, 0.1, 1.2};

void BM_GammaComplex(benchmark::State& state) {
    Complex z(0.37, 2.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gamma(z));
        z += Complex(1e-9, 0.0);
    }
}
BENCHMARK(BM_GammaComplex);

void BM_GammaK(benchmark::State& state) {
    Complex z(1.7, -0.4);
    for (auto _ : state) benchmark::DoNotOptimize(gamma_k(z, 2.5));
}
BENCHMARK(BM_GammaK);

void BM_Gauss2F1(benchmark::State& state) {
    const double z = static_cast<double>(state.range(0)) / 100.0;
    for (auto _ : state) benchmark::DoNotOptimize(gauss_2f1({0.3, 0.8, 1.4}, z));
}
BENCHMARK(BM_Gauss2F1)->Arg(-5000)->Arg(-50)->Arg(30)->Arg(95)->Arg(99);

void BM_Gauss2F1Degenerate(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(gauss_2f1({1.0, 1.0, 2.0}, 0.97));
}
BENCHMARK(BM_Gauss2F1Degenerate);

void BM_AppellF3(benchmark::State& state) {
    const AppellF3Params p{0.5, 0.25, 0.5, 0.25, 1.5};
    for (auto _ : state) benchmark::DoNotOptimize(appell_f3(p, 0.3, 0.2));
}
BENCHMARK(BM_AppellF3);

// Kernel argument s = t/x on the left side; small s is the product-integral route.
void BM_F3Kernel(benchmark::State& state) {
    const double s = std::pow(10.0, -static_cast<double>(state.range(0)));
    const F3Kernel k({0.5, 0.3, 0.2, 0.1, 1.2}, 1e-13);
    for (auto _ : state) benchmark::DoNotOptimize(k(s));
}
BENCHMARK(BM_F3Kernel)->Arg(1)->Arg(3)->Arg(8)->Arg(100);

void BM_EvalKWright(benchmark::State& state) {
    const WrightParams p{1.5, {{0.7, 1.0}, {1.2, 0.5}}, {{2.0, 1.0}}};
    const Complex z(0.4 * static_cast<double>(state.range(0)), 0.3);
    for (auto _ : state) benchmark::DoNotOptimize(eval_kwright(p, z));
}
BENCHMARK(BM_EvalKWright)->Arg(1)->Arg(10)->Arg(50);

void BM_Transform(benchmark::State& state) {
    const WrightParams f{1.0, {{1.0, 1.0}}, {{2.0, 1.0}}};
    for (auto _ : state) benchmark::DoNotOptimize(transform(kOp, {2.0, 1.0, 0.5}, f));
}
BENCHMARK(BM_Transform);

void BM_EvaluateImage(benchmark::State& state) {
    const TransformedWright t = transform(kOp, {2.0, 1.0, 0.5}, {1.0, {{1.0, 1.0}}, {{2.0, 1.0}}});
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_image(t, 1.0));
}
BENCHMARK(BM_EvaluateImage);

void BM_OracleIntegral(benchmark::State& state) {
    const Side side = state.range(0) == 0 ? Side::Left : Side::Right;
    MSMParams op = kOp;
    op.side = side;
    const double rho = 3.0;
    for (auto _ : state) benchmark::DoNotOptimize(compare_power_image(op, rho, 1.0));
}
BENCHMARK(BM_OracleIntegral)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_OracleCaputo(benchmark::State& state) {
    MSMParams op = kOp;
    op.kind = OpKind::Caputo;
    for (auto _ : state) benchmark::DoNotOptimize(compare_power_image(op, 4.0, 1.0));
}
BENCHMARK(BM_OracleCaputo)->Unit(benchmark::kMillisecond);

void BM_OracleDerivative(benchmark::State& state) {
    MSMParams op = kOp;
    op.kind = OpKind::Derivative;
    for (auto _ : state) benchmark::DoNotOptimize(compare_power_image(op, 3.0, 1.0));
}
BENCHMARK(BM_OracleDerivative)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
