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

#ifndef BLINQS_QUANTIZER_HPP
#define BLINQS_QUANTIZER_HPP

#include <cstdint>
#include <vector>

#include "blinqs/grid.hpp"
#include "blinqs/wavelet.hpp"

namespace blinqs
{

   // Sub-band adaptive step sizes: the LL band is left unquantised, detail
   // bands get coarser steps the finer their level, capped at delta_max.
   class DeltaSchedule
   {
   public:
       DeltaSchedule() = default;
       DeltaSchedule(int max_level, int delta_max, std::vector<int> detail_deltas);

       int max_level() const { return _max_level; }
       int delta_max() const { return _delta_max; }

       int delta(BandKind kind, int level) const;

   private:
       int _max_level = 0;
       int _delta_max = 0;
       std::vector<int> _detail; // indexed by level - 1
   };

   DeltaSchedule compute_delta_schedule(int max_level, int delta_max);

   // delta > 1: truncation toward zero. delta == 1: round half away from zero.
   IntGrid quantize(const RealGrid& block, int delta);

   enum class Dequantization
   {
       midpoint, // centre of the quantisation bin
       plain     // q * delta
   };

   RealGrid dequantize(const IntGrid& qblock, int delta, Dequantization mode = Dequantization::midpoint);

   // Dequantises a partially decoded block. `unresolved(r, c)` is the number
   // of low magnitude bits not yet received; the reconstruction is placed
   // in the middle of the remaining interval of candidate coefficients.
   RealGrid dequantize(const IntGrid& qblock, const Grid<std::uint8_t>& unresolved, int delta,
                       Dequantization mode = Dequantization::midpoint);

}

#endif
