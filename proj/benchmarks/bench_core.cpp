#include <benchmark/benchmark.h>

#include <random>

#include "framecomp/descent.hpp"
#include "framecomp/fod.hpp"
#include "framecomp/frame.hpp"

using namespace framecomp;

namespace {

Spectrum bench_lambda(std::size_t d) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    std::vector<double> v(d);
    for (double& x : v) x = u(rng);
    std::sort(v.begin(), v.end());
    return Spectrum(std::move(v), Order::Ascending);
}

Spectrum bench_norms(std::size_t k) {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(0.05, 5.0);
    std::vector<double> v(k);
    for (double& x : v) x = u(rng);
    std::sort(v.begin(), v.end(), std::greater<double>());
    return Spectrum(std::move(v), Order::Descending);
}

} // namespace

static void BM_waterfill(benchmark::State& state) {
    const Spectrum lam = bench_lambda(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(waterfill_t(lam, 3.7));
}
BENCHMARK(BM_waterfill)->Arg(8)->Arg(64)->Arg(512);

static void BM_optimal_spectrum(benchmark::State& state) {
    const std::size_t d = static_cast<std::size_t>(state.range(0));
    const Spectrum lam = bench_lambda(d);
    const Spectrum a = bench_norms(d + d / 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(optimal_spectrum(lam, a));
}
BENCHMARK(BM_optimal_spectrum)->Arg(8)->Arg(32)->Arg(128);

static void BM_eig_hermitian(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const FrameSeq G = random_completion(d, bench_norms(static_cast<std::size_t>(2 * d)), 23);
    const Eigen::MatrixXcd A = G.synthesis() * G.synthesis().adjoint();
    for (auto _ : state)
        benchmark::DoNotOptimize(eig_hermitian(A));
}
BENCHMARK(BM_eig_hermitian)->Arg(4)->Arg(16)->Arg(64);

static void BM_schur_horn_design(benchmark::State& state) {
    const std::size_t k = static_cast<std::size_t>(state.range(0));
    const Spectrum a = bench_norms(k);
    const int d = static_cast<int>(k) / 2 + 1;
    const Spectrum mu = frame_operator(random_completion(d, a, 29)).eigenvalues_desc();
    for (auto _ : state)
        benchmark::DoNotOptimize(schur_horn_design(mu, a, d));
}
BENCHMARK(BM_schur_horn_design)->Arg(8)->Arg(32)->Arg(128);

static void BM_fod_minimum(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const Spectrum a = bench_norms(static_cast<std::size_t>(d + 2));
    const FrameSeq seed_frame = random_completion(d, bench_norms(static_cast<std::size_t>(2 * d)), 31);
    const HermitianMatrix S0 = frame_operator(seed_frame);
    const UINorm fro = UINorm::frobenius();
    for (auto _ : state)
        benchmark::DoNotOptimize(fod_minimum(S0, a, fro));
}
BENCHMARK(BM_fod_minimum)->Arg(4)->Arg(8)->Arg(16);

static void BM_descent_step(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const Spectrum a = bench_norms(static_cast<std::size_t>(d + 2));
    const HermitianMatrix S0 = HermitianMatrix::diagonal(bench_lambda(static_cast<std::size_t>(d)));
    const FrameSeq G = random_completion(d, a, 37);
    const ConvexFn phi = ConvexFn::square();
    for (auto _ : state)
        benchmark::DoNotOptimize(riemannian_grad(S0, G, phi));
}
BENCHMARK(BM_descent_step)->Arg(4)->Arg(8)->Arg(16);

BENCHMARK_MAIN();
