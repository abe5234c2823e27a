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

#include "blinqs/pcrd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace blinqs
{

   RDCurve collect_rd_points(const BlockSource& block, Dequantization mode)
   {
       const CodedBlock& cb = *block.coded;
       const RealGrid& original = *block.original;

       if (original.rows() != cb.rows || original.cols() != cb.cols)
           throw ArgumentError("original coefficients do not match the coded block shape");

       auto distortion_at = [&](std::uint64_t bits) {
           const DecodedBlock dec = decode_block(cb, bits);
           RealGrid rec = dequantize(dec.values, dec.unresolved, block.delta, mode);

           if (cb.secondary)
               rec = block_secondary_dwt(rec, Direction::inverse).coeffs;

           double sse = 0.0;

           for (std::size_t i = 0; i < rec.size(); ++i)
           {
               const double e = original[i] - rec[i];
               sse += e * e;
           }

           return sse * block.weight;
       };

       RDCurve curve;
       curve.push_back({0, distortion_at(0)});

       std::uint64_t end = 0;

       for (auto len : cb.plane_lengths)
       {
           if (len == 0)
               continue;

           end += len;
           curve.push_back({end, distortion_at(end)});
       }

       return curve;
   }

   RDCurve convex_hull(const RDCurve& curve)
   {
       RDCurve hull;

       for (const auto& p : curve)
       {
           if (!hull.empty() && (p.rate <= hull.back().rate || p.distortion >= hull.back().distortion))
               continue;

           // Drop earlier points that sit on or above the chord to p.
           while (hull.size() >= 2)
           {
               const auto& a = hull[hull.size() - 2];
               const auto& b = hull.back();
               const double slope_ab = (a.distortion - b.distortion) / double(b.rate - a.rate);
               const double slope_bp = (b.distortion - p.distortion) / double(p.rate - b.rate);

               if (slope_bp < slope_ab)
                   break;

               hull.pop_back();
           }

           hull.push_back(p);
       }

       return hull;
   }

   LagrangeSelection select_for_lambda(std::span<const RDCurve> hulls, double lambda)
   {
       if (!(lambda > 0.0))
           throw ArgumentError("lambda must be positive");

       const double threshold = 1.0 / lambda;
       LagrangeSelection sel;
       sel.lambda = lambda;
       sel.points.reserve(hulls.size());

       for (const auto& hull : hulls)
       {
           std::size_t n = 0;

           for (std::size_t k = 1; k < hull.size(); ++k)
           {
               const double dr = double(hull[k].rate - hull[n].rate);
               const double dd = hull[n].distortion - hull[k].distortion;

               if (dd / dr > threshold)
                   n = k;
           }

           sel.points.push_back(n);

           if (!hull.empty())
           {
               sel.rate += hull[n].rate;
               sel.distortion += hull[n].distortion;
           }
       }

       return sel;
   }

   LagrangeSelection bisect_lambda(std::span<const RDCurve> hulls, std::uint64_t budget_bits)
   {
       const auto all = select_for_lambda(hulls, std::numeric_limits<double>::infinity());

       if (all.rate <= budget_bits)
           return all;

       double steepest = 0.0, shallowest = std::numeric_limits<double>::infinity();

       for (const auto& hull : hulls)
       {
           for (std::size_t k = 1; k < hull.size(); ++k)
           {
               const double s = (hull[k - 1].distortion - hull[k].distortion) / double(hull[k].rate - hull[k - 1].rate);
               steepest = std::max(steepest, s);
               shallowest = std::min(shallowest, s);
           }
       }

       // Below 1/steepest nothing is taken, above 1/shallowest everything is.
       double lo = std::log(0.5 / steepest);
       double hi = std::log(2.0 / shallowest);
       LagrangeSelection best = select_for_lambda(hulls, std::exp(lo));

       for (int it = 0; it < 64; ++it)
       {
           const double mid = 0.5 * (lo + hi);

           if (mid <= lo || mid >= hi)
               break;

           auto sel = select_for_lambda(hulls, std::exp(mid));

           if (sel.rate <= budget_bits)
           {
               lo = mid;
               best = std::move(sel);
           }
           else
           {
               hi = mid;
           }
       }

       if (best.rate == 0)
       {
           std::uint64_t cheapest = std::numeric_limits<std::uint64_t>::max();

           for (const auto& hull : hulls)
           {
               if (hull.size() > 1)
                   cheapest = std::min(cheapest, hull[1].rate);
           }

           best.infeasible = cheapest > budget_bits;
       }

       return best;
   }

}
