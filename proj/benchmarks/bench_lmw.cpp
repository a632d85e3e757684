/*
 * Copyright 2026 The lmwave Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include <memory>
#include <random>
#include <vector>

#include "lmw/filters.h"
#include "lmw/hermite.h"
#include "lmw/limit.h"
#include "lmw/spectra.h"
#include "lmw/synth.h"
#include "lmw/transform.h"

namespace {

using namespace lmw;

std::vector<double> noise(std::size_t n) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> nd;
  std::vector<double> v(n);
  for (auto& x : v) x = nd(gen);
  return v;
}

void BM_EmbeddingSetup(benchmark::State& state) {
  const auto model = MemoryModel::farima(0.35);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(CirculantSynthesizer(model, n).embedding_size());
}
BENCHMARK(BM_EmbeddingSetup)->RangeMultiplier(8)->Range(1 << 11, 1 << 17)->Unit(benchmark::kMillisecond);

void BM_Sample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CirculantSynthesizer syn(MemoryModel::farima(0.35), n);
  std::uint64_t r = 0;
  for (auto _ : state) benchmark::DoNotOptimize(syn.sample(7, r++));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_Sample)->RangeMultiplier(8)->Range(1 << 11, 1 << 17)->Unit(benchmark::kMicrosecond);

void BM_TransformPath(benchmark::State& state) {
  const auto bank = build_family_bank("db2", 8);
  const auto y = noise(std::size_t{1} << 17);
  TransformOptions opt;
  opt.path = state.range(0) == 0 ? ConvolutionPath::Direct : ConvolutionPath::Fft;
  for (auto _ : state) benchmark::DoNotOptimize(coeffs_from_path(bank, y, {}, opt));
  state.SetLabel(state.range(0) == 0 ? "direct" : "fft");
}
BENCHMARK(BM_TransformPath)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BuildBank(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_family_bank("db3", static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BuildBank)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_LimitTransferEval(benchmark::State& state) {
  const LimitTransfer h(build_family_bank("db2", 8));
  double l = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(h(l));
    l = l * 1.0001 + 1e-3;
    if (l > 1e3) l = 0.1;
  }
}
BENCHMARK(BM_LimitTransferEval);

void BM_HermiteCoeffs(benchmark::State& state) {
  const auto g = make_filter("centered-exp");
  for (auto _ : state) benchmark::DoNotOptimize(hermite_coeffs(g.fn));
}
BENCHMARK(BM_HermiteCoeffs)->Unit(benchmark::kMicrosecond);

void BM_LimitCov(benchmark::State& state) {
  LimitSpec spec;
  spec.q = static_cast<int>(state.range(0));
  spec.d = 0.35;
  spec.K = 1;
  spec.hinf = std::make_shared<LimitTransfer>(build_family_bank("haar", 6));
  for (auto _ : state) benchmark::DoNotOptimize(limit_cov(spec, 0, 0, 1, 1));
}
BENCHMARK(BM_LimitCov)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_SelfConvolve(benchmark::State& state) {
  const auto model = MemoryModel::farima(0.35);
  for (auto _ : state) benchmark::DoNotOptimize(self_convolve(model, 2, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_SelfConvolve)->Arg(1 << 14)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
