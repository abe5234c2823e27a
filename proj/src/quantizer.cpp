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

#include "blinqs/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace blinqs
{

   DeltaSchedule::DeltaSchedule(int max_level, int delta_max, std::vector<int> detail_deltas)
       : _max_level(max_level), _delta_max(delta_max), _detail(std::move(detail_deltas))
   {
       if (int(_detail.size()) != max_level)
           throw ArgumentError("delta schedule needs one step per level");
   }

   int DeltaSchedule::delta(BandKind kind, int level) const
   {
       if (level < 1 || level > _max_level)
           throw ArgumentError("level " + std::to_string(level) + " outside delta schedule");

       if (kind == BandKind::LL)
           return 1;

       return _detail[std::size_t(level - 1)];
   }

   DeltaSchedule compute_delta_schedule(int max_level, int delta_max)
   {
       if (max_level < 1)
           throw ArgumentError("delta schedule needs max_level >= 1");

       if (delta_max < 2)
           throw ArgumentError("delta_max must be >= 2");

       std::vector<int> detail(std::size_t(max_level), delta_max);
       int delta = 1;

       // Walk from the coarsest level outward; once the cap is reached every
       // finer level keeps delta_max.
       for (int b = max_level; b >= 1; --b)
       {
           delta += 1;
           detail[std::size_t(b - 1)] = std::min(delta, delta_max);

           if (delta >= delta_max)
               break;
       }

       return {max_level, delta_max, std::move(detail)};
   }

   IntGrid quantize(const RealGrid& block, int delta)
   {
       if (delta < 1)
           throw ArgumentError("quantisation step must be >= 1");

       IntGrid out(block.rows(), block.cols());

       for (std::size_t i = 0; i < block.size(); ++i)
       {
           const double v = block[i];
           out[i] = delta == 1 ? std::int32_t(std::round(v)) : std::int32_t(std::trunc(v / delta));
       }

       return out;
   }

   RealGrid dequantize(const IntGrid& qblock, int delta, Dequantization mode)
   {
       return dequantize(qblock, Grid<std::uint8_t>(qblock.rows(), qblock.cols()), delta, mode);
   }

   RealGrid dequantize(const IntGrid& qblock, const Grid<std::uint8_t>& unresolved, int delta, Dequantization mode)
   {
       if (delta < 1)
           throw ArgumentError("quantisation step must be >= 1");

       if (unresolved.rows() != qblock.rows() || unresolved.cols() != qblock.cols())
           throw ArgumentError("unresolved-plane map does not match block shape");

       RealGrid out(qblock.rows(), qblock.cols());

       for (std::size_t i = 0; i < qblock.size(); ++i)
       {
           const std::int32_t q = qblock[i];

           if (q == 0)
               continue;

           // Candidate magnitudes are [m, m + span).
           const double m = std::abs(double(q));
           const double span = std::ldexp(1.0, unresolved[i]);
           double mag;

           if (mode == Dequantization::plain)
               mag = (m + std::floor(span / 2)) * delta;
           else if (delta == 1)
               mag = m + span / 2 - 0.5; // rounding bins are centred on integers
           else
               mag = (m + span / 2) * delta;

           out[i] = q < 0 ? -mag : mag;
       }

       return out;
   }

}
