/*
Copyright 2026 The BlinQS Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
you may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

// Serial reference against the OpenMP path for the block-parallel kernels.

#include <benchmark/benchmark.h>

#include "blinqs/codec.hpp"
#include "blinqs/wavelet.hpp"
#include "synthetic.hpp"

using namespace blinqs;

namespace
{
   const Image& bench_image()
   {
       static const Image img = fixture::synthetic_image(1024, 1024);
       return img;
   }

   Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

   void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "openmp" : "serial"); }

   void BM_ForwardDwt(benchmark::State& state)
   {
       const RealGrid g = level_shift(bench_image(), -127);

       for (auto _ : state)
           benchmark::DoNotOptimize(forward_dwt(g, 5, exec_of(state)));

       label(state);
   }

   void BM_InverseDwt(benchmark::State& state)
   {
       const auto pyr = forward_dwt(level_shift(bench_image(), -127), 5);

       for (auto _ : state)
           benchmark::DoNotOptimize(inverse_dwt(pyr, exec_of(state)));

       label(state);
   }

   void BM_Encode(benchmark::State& state)
   {
       const EncodeParams p{3, 32, 4, exec_of(state)};

       for (auto _ : state)
           benchmark::DoNotOptimize(encode_image(bench_image(), p));

       label(state);
   }

   void BM_Decode(benchmark::State& state)
   {
       const auto enc = encode_image(bench_image());

       for (auto _ : state)
           benchmark::DoNotOptimize(decode_image_stream(enc.stream, {exec_of(state)}));

       label(state);
   }

   void BM_RdHulls(benchmark::State& state)
   {
       const auto enc = encode_image(bench_image());

       for (auto _ : state)
           benchmark::DoNotOptimize(rd_hulls(enc, exec_of(state)));

       label(state);
   }
}

BENCHMARK(BM_ForwardDwt)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_InverseDwt)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Encode)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Decode)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RdHulls)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
