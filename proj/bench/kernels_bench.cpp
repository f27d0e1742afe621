// Serial reference vs OpenMP variant of each hot kernel.
#include <benchmark/benchmark.h>

#include <cmath>

#include "cantor/fourier_series.hpp"
#include "cantor/geometry.hpp"
#include "cantor/kernels.hpp"

using namespace cantor;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(1) ? Exec::Parallel : Exec::Serial; }

void label(benchmark::State& state) { state.SetLabel(state.range(1) ? "omp" : "serial"); }

void BM_convolve(benchmark::State& state) {
  const auto f = random_polynomial(1, state.range(0));
  const auto g = random_polynomial(2, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(convolve(f.dense(), g.dense(), exec_of(state)));
  label(state);
}

void BM_evaluate_many(benchmark::State& state) {
  const auto f = random_polynomial(3, 256);
  std::vector<double> angles(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < angles.size(); ++i) angles[i] = kTwoPi * i / angles.size();
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_many(f.dense(), angles, exec_of(state)));
  label(state);
}

void BM_herglotz(benchmark::State& state) {
  const auto mu = cantor_measure(PerfectSymmetricSet::from_q(3), 8);
  for (auto _ : state)
    benchmark::DoNotOptimize(herglotz_on_circle(mu, 0.999, static_cast<std::size_t>(state.range(0)), exec_of(state)));
  label(state);
}

void BM_distance_profile(benchmark::State& state) {
  const auto set = PerfectSymmetricSet::from_q(3);
  for (auto _ : state)
    benchmark::DoNotOptimize(distance_profile(set, 12, static_cast<std::size_t>(state.range(0)), exec_of(state)));
  label(state);
}

void BM_submultiplicative(benchmark::State& state) {
  const std::int64_t r = state.range(0);
  std::vector<double> logw(static_cast<std::size_t>(4 * r + 1));
  for (std::int64_t n = -2 * r; n <= 2 * r; ++n) logw[static_cast<std::size_t>(n + 2 * r)] = std::log1p(std::abs(n));
  for (auto _ : state) benchmark::DoNotOptimize(submultiplicative_violations(logw, r, 1e-12, exec_of(state)));
  label(state);
}

void BM_blocked_sum(benchmark::State& state) {
  std::vector<double> v(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(0.1 * i);
  for (auto _ : state) benchmark::DoNotOptimize(blocked_sum(v, exec_of(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_convolve)->ArgsProduct({{1 << 10, 1 << 13}, {0, 1}});
BENCHMARK(BM_evaluate_many)->ArgsProduct({{1 << 12, 1 << 15}, {0, 1}});
BENCHMARK(BM_herglotz)->ArgsProduct({{1 << 12, 1 << 14}, {0, 1}});
BENCHMARK(BM_distance_profile)->ArgsProduct({{1 << 14, 1 << 16}, {0, 1}});
BENCHMARK(BM_submultiplicative)->ArgsProduct({{256, 1024}, {0, 1}});
BENCHMARK(BM_blocked_sum)->ArgsProduct({{1 << 16, 1 << 20}, {0, 1}});

BENCHMARK_MAIN();
