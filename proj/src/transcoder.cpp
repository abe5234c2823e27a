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

#include "blinqs/transcoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace blinqs
{

   double ContributionProfile::sigma() const { return std::sqrt(variance); }

   std::vector<double> percentage_lengths(std::span<const std::uint64_t> lengths)
   {
       const auto total = std::accumulate(lengths.begin(), lengths.end(), std::uint64_t(0));

       if (total == 0)
           throw ArgumentError("degenerate stream: every block has zero length");

       std::vector<double> pl(lengths.size());

       for (std::size_t i = 0; i < lengths.size(); ++i)
           pl[i] = 100.0 * double(lengths[i]) / double(total);

       return pl;
   }

   ContributionProfile gaussian_profile(std::span<const double> pl)
   {
       ContributionProfile p;
       p.pl.assign(pl.begin(), pl.end());

       const auto n = double(pl.size());

       if (pl.empty())
       {
           p.degenerate = true;
           return p;
       }

       p.mean = std::accumulate(pl.begin(), pl.end(), 0.0) / n;

       double ss = 0.0;

       for (double v : pl)
           ss += (v - p.mean) * (v - p.mean);

       p.variance = ss / n;
       p.pdf.assign(pl.size(), 0.0);

       if (pl.size() < 2 || p.variance == 0.0)
       {
           p.degenerate = true;
           return p;
       }

       const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * p.variance);

       for (std::size_t i = 0; i < pl.size(); ++i)
       {
           const double d = pl[i] - p.mean;
           p.pdf[i] = norm * std::exp(-d * d / (2.0 * p.variance));
       }

       return p;
   }

   RateLocation locate_rate(double bpp)
   {
       if (!(bpp > 0.0) || !std::isfinite(bpp))
           throw ArgumentError("target rate must be a positive number of bits per pixel");

       RateLocation loc;
       loc.rate = bpp;

       for (std::size_t i = 0; i < standard_rates.size(); ++i)
       {
           if (bpp == standard_rates[i])
           {
               loc.standard = int(i) + 1;
               return loc;
           }
       }

       if (bpp < standard_rates.front())
       {
           loc.below_range = true;
           loc.standard = 1;
           return loc;
       }

       if (bpp > standard_rates.back())
       {
           loc.above_range = true;
           return loc;
       }

       for (std::size_t i = 0; i + 1 < standard_rates.size(); ++i)
       {
           if (standard_rates[i] < bpp && bpp < standard_rates[i + 1])
           {
               loc.s = int(i) + 1;
               loc.delta_low = std::abs(standard_rates[i] - bpp);
               loc.delta_high = std::abs(standard_rates[i + 1] - bpp);
               break;
           }
       }

       return loc;
   }

   FractionalStep find_x_new(const RateLocation& loc, int k_max, double tolerance)
   {
       if (loc.s < 1 || loc.s >= int(standard_rates.size()))
           throw ArgumentError("find_x_new needs a rate strictly between two standard rates");

       if (k_max < 1 || !(tolerance > 0.0))
           throw ArgumentError("find_x_new needs k_max >= 1 and a positive tolerance");

       if (loc.delta_low == loc.delta_high)
           return {1, 1, 0.5, 0.0};

       const double lo = standard_rates[std::size_t(loc.s - 1)];
       const double hi = standard_rates[std::size_t(loc.s)];
       const bool from_low = loc.delta_low < loc.delta_high;

       FractionalStep best{1, 1, 0.5, std::numeric_limits<double>::infinity()};

       for (int k = 1; k <= k_max; ++k)
       {
           for (int j = 1; j <= k; ++j)
           {
               const double frac = double(j) / (k + 1);
               const double candidate = from_low ? lo + (hi - lo) * frac : hi - (hi - lo) * frac;
               const double beta = std::abs(loc.rate - candidate);

               if (beta < best.beta)
                   best = {j, k, frac, beta};

               if (best.beta <= tolerance)
                   return best;
           }
       }

       return best;
   }

   Location compute_location(int standard_index)
   {
       if (standard_index < 1 || standard_index > int(standard_rates.size()))
           throw ArgumentError("standard rate index out of range");

       return {standard_location(standard_index), 0, 1};
   }

   Location compute_location(int s, const FractionalStep& step, double delta_low, double delta_high)
   {
       Location loc = compute_location(s);
       loc.subdivisions = step.k + 1;
       // Approaching from R_{s+1} the boundary sits x_new short of the next
       // standard partition, i.e. (k + 1 - j) sub-steps past loc_{R_s}.
       loc.offset = delta_low <= delta_high ? step.j : step.k + 1 - step.j;
       return loc;
   }

   Inclusion inclusion_map(const ContributionProfile& profile, double boundary)
   {
       Inclusion inc;
       const auto n = profile.pl.size();

       if (profile.degenerate || boundary == -std::numeric_limits<double>::infinity())
       {
           inc.blocks.resize(n);
           std::iota(inc.blocks.begin(), inc.blocks.end(), 0u);
           return inc;
       }

       const double threshold = profile.mean + boundary * profile.sigma();

       for (std::size_t i = 0; i < n; ++i)
       {
           if (profile.pl[i] >= threshold)
               inc.blocks.push_back(std::uint32_t(i));
       }

       if (inc.blocks.empty() && n > 0)
       {
           const auto top = std::max_element(profile.pl.begin(), profile.pl.end()) - profile.pl.begin();
           inc.blocks.push_back(std::uint32_t(top));
           inc.fallback = true;
       }

       return inc;
   }

   TruncationPlan truncation_points(const Inclusion& inclusion, const StreamHeader& header, std::uint64_t budget_bits,
                                    const TruncationOptions& options)
   {
       if (inclusion.blocks.empty())
           throw ArgumentError("truncation needs a non-empty inclusion map");

       if (budget_bits == 0)
           throw ArgumentError("truncation needs a positive bit budget");

       TruncationPlan plan;
       plan.included = inclusion.blocks;
       plan.points.assign(header.blocks.size(), 0);
       plan.budget_bits = budget_bits;

       unsigned __int128 included_bits = 0;

       for (auto id : inclusion.blocks)
           included_bits += header.blocks.at(id).length();

       const bool saturated = included_bits <= budget_bits;

       for (auto id : inclusion.blocks)
       {
           const auto len = header.blocks[id].length();
           auto n = saturated ? len : std::uint64_t((unsigned __int128)(len)*budget_bits / included_bits);

           if (options.plane_aligned && n < len)
           {
               std::uint64_t edge = 0;

               for (auto l : header.blocks[id].lengths)
               {
                   if (edge + l > n)
                       break;

                   edge += l;
               }

               n = edge;
           }

           plan.points[id] = n;
           plan.rate_bits += n;
       }

       if (options.top_up && !saturated)
       {
           for (auto id : inclusion.blocks)
           {
               if (plan.rate_bits >= budget_bits)
                   break;

               if (plan.points[id] < header.blocks[id].length())
               {
                   ++plan.points[id];
                   ++plan.rate_bits;
               }
           }
       }

       if (plan.rate_bits > budget_bits && !saturated)
           throw InvariantError("truncation plan exceeds its budget");

       return plan;
   }

   TranscodeTrace plan_transcode(const StreamHeader& header, double target_bpp, const TranscodeOptions& options)
   {
       TranscodeTrace t;
       t.location = locate_rate(target_bpp);

       const double budget = std::floor(target_bpp * double(header.pixels()));
       const auto lengths = header.block_lengths();
       const auto total = std::accumulate(lengths.begin(), lengths.end(), std::uint64_t(0));

       if (total == 0 || budget < 1.0)
       {
           // Nothing to choose between (or no room for a single bit): an
           // empty-payload plan.
           t.plan.points.assign(header.blocks.size(), 0);
           t.plan.budget_bits = std::uint64_t(std::max(budget, 0.0));
           return t;
       }

       t.profile = gaussian_profile(percentage_lengths(lengths));

       if (t.location.above_range)
       {
           t.boundary = -std::numeric_limits<double>::infinity();
       }
       else if (t.location.is_standard())
       {
           t.partition = compute_location(t.location.standard);
           t.boundary = t.partition->boundary();
       }
       else
       {
           t.step = find_x_new(t.location, options.k_max, options.tolerance);
           t.partition = compute_location(t.location.s, *t.step, t.location.delta_low, t.location.delta_high);
           t.boundary = t.partition->boundary();
       }

       t.inclusion = inclusion_map(t.profile, t.boundary);
       t.plan = truncation_points(t.inclusion, header, std::uint64_t(budget), options.truncation);
       return t;
   }

   std::vector<std::uint8_t> transcode(std::span<const std::uint8_t> stream, double target_bpp,
                                      const TranscodeOptions& options, TranscodeTrace* trace)
   {
       const ParsedStream parsed = parse_header(stream);
       TranscodeTrace t = plan_transcode(parsed.header, target_bpp, options);
       auto out = retruncate(stream, parsed, t.plan.points);

       if (trace != nullptr)
           *trace = std::move(t);

       return out;
   }

}
