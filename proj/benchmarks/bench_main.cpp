// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>

#include "rfturbo/rfturbo.hpp"

namespace {

using namespace rfturbo;

EncodingMatrix haar_code(std::size_t n) {
  return build_code({builtin_family(FilterFamily::kHaar), n, half_shift(n)});
}

Vector random_input(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector x(static_cast<Index>(n));
  for (Index i = 0; i < x.size(); ++i) x(i) = u(rng);
  return x;
}

void BM_NumericalRank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto em = haar_code(n);
  const Matrix tr = surviving_rows(em, paired_burst(n, 0, n / 4));
  for (auto _ : state) benchmark::DoNotOptimize(numerical_rank(tr));
}
BENCHMARK(BM_NumericalRank)->Arg(32)->Arg(150)->Arg(300);

void BM_BuildCode(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(haar_code(n));
}
BENCHMARK(BM_BuildCode)->Arg(32)->Arg(150);

void BM_Encode(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto em = haar_code(n);
  const Vector x = random_input(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(encode(em, x));
}
BENCHMARK(BM_Encode)->Arg(32)->Arg(150);

void BM_Decode(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto method = static_cast<DecodeMethod>(state.range(1));
  const auto em = haar_code(n);
  const auto cw = encode(em, random_input(n, 2));
  const auto surv = apply_erasure(cw.y, paired_burst(n, 3, n / 8));
  for (auto _ : state) benchmark::DoNotOptimize(decode(em, surv, method));
}
BENCHMARK(BM_Decode)
    ->ArgsProduct({{32, 150}, {static_cast<long>(DecodeMethod::kLeastSquares),
                               static_cast<long>(DecodeMethod::kProjection), static_cast<long>(DecodeMethod::kYoula)}});

void BM_TraceIfRecoverable(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto em = build_code({builtin_family(FilterFamily::kHaar), n, random_perm(n, 1)});
  const auto pattern = paired_burst(n, 0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(trace_if_recoverable(em, pattern));
}
BENCHMARK(BM_TraceIfRecoverable)->Arg(32)->Arg(150);

void BM_EmpiricalMse(benchmark::State& state) {
  const std::size_t n = 32;
  const auto em = haar_code(n);
  const auto pattern = paired_burst(n, 0, 4);
  const QuantizerSpec q(1.0 / 256.0);
  const auto noise = static_cast<NoiseModel>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(empirical_mse(em, pattern, q, 100, 1, noise));
}
BENCHMARK(BM_EmpiricalMse)
    ->Arg(static_cast<long>(NoiseModel::kRounding))
    ->Arg(static_cast<long>(NoiseModel::kSubtractiveDither));

}  // namespace

BENCHMARK_MAIN();
