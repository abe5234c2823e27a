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

#ifndef BLINQS_PCRD_HPP
#define BLINQS_PCRD_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "blinqs/quantizer.hpp"
#include "blinqs/spiht.hpp"

namespace blinqs
{

   // Post-compression rate-distortion optimisation over the same embedded
   // block strings, used as the reference the blind transcoder is measured
   // against.

   struct RDPoint
   {
       std::uint64_t rate = 0; // bits kept
       double distortion = 0.0;

       bool operator==(const RDPoint&) const = default;
   };

   // Candidate truncation points of one block, cheapest first.
   using RDCurve = std::vector<RDPoint>;

   struct BlockSource
   {
       const CodedBlock* coded = nullptr;
       const RealGrid* original = nullptr; // band-domain coefficients before any secondary DWT
       int delta = 1;
       double weight = 1.0; // synthesis gain of the block's band
   };

   // Decodes every plane-boundary prefix (including the empty one) and
   // measures weighted squared error against the original coefficients.
   RDCurve collect_rd_points(const BlockSource& block, Dequantization mode = Dequantization::midpoint);

   // Lower convex hull: strictly increasing rate, strictly decreasing
   // distortion-rate slopes. Always keeps the first point.
   RDCurve convex_hull(const RDCurve& curve);

   struct LagrangeSelection
   {
       double lambda = 0.0;
       std::vector<std::size_t> points; // chosen index into each hull
       std::uint64_t rate = 0;
       double distortion = 0.0;
       bool infeasible = false; // even the cheapest non-empty choice broke the budget
   };

   // Per block, walks the hull and moves to point k whenever the distortion
   // drop per bit beats 1/lambda. Minimises sum(R + lambda * D).
   LagrangeSelection select_for_lambda(std::span<const RDCurve> hulls, double lambda);

   // Bisects lambda for the largest total rate not above budget_bits.
   LagrangeSelection bisect_lambda(std::span<const RDCurve> hulls, std::uint64_t budget_bits);

}

#endif
