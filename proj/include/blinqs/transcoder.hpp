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

#ifndef BLINQS_TRANSCODER_HPP
#define BLINQS_TRANSCODER_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "blinqs/container.hpp"

namespace blinqs
{

   // Blind rate adaptation of a single-layer stream. Everything in this
   // module works from the per-block lengths recorded in the header; no
   // payload bit and no image sample is ever consulted.

   inline constexpr std::array<double, 6> standard_rates = {0.0625, 0.125, 0.25, 0.5, 1.0, 2.0};

   // Inclusion boundary for standard rate R_s, in units of sigma above the
   // mean: R_1 keeps blocks at mu + 2 sigma and up, R_6 at mu - 3 sigma.
   inline double standard_boundary(int s) { return 3.0 - s; }

   // Partition index of standard rate R_s (loc_{R_1} = 2, loc_{R_2} = 3, ...).
   inline int standard_location(int s) { return s + 1; }

   struct ContributionProfile
   {
       std::vector<double> pl;  // percent of the total stream length
       double mean = 0.0;       // percent
       double variance = 0.0;   // percent^2
       std::vector<double> pdf; // normal density at each PL_i
       bool degenerate = false; // variance == 0

       double sigma() const;
   };

   std::vector<double> percentage_lengths(std::span<const std::uint64_t> lengths);

   ContributionProfile gaussian_profile(std::span<const double> pl);

   struct RateLocation
   {
       double rate = 0.0;
       // 1-based index into standard_rates when the rate is one of them.
       int standard = 0;
       // Otherwise the bracketing pair R_s < rate < R_{s+1}.
       int s = 0;
       double delta_low = 0.0;  // rate - R_s
       double delta_high = 0.0; // R_{s+1} - rate
       bool below_range = false; // rate < R_1: treated as R_1
       bool above_range = false; // rate > R_6: every block is kept

       bool is_standard() const { return standard != 0; }
   };

   RateLocation locate_rate(double bpp);

   struct FractionalStep
   {
       int j = 1;
       int k = 1;
       double x_new = 0.5; // j / (k + 1)
       double beta = 0.0;  // |R_new - R_new_k| at the chosen (j, k)
   };

   inline constexpr int default_k_max = 16;
   inline constexpr double default_beta_tolerance = 1e-4;

   // Searches the refinement grid R_s + (R_{s+1} - R_s) j / (k + 1) (or the
   // mirror image from R_{s+1} when the rate is nearer the upper end) for the
   // point closest to the requested rate.
   FractionalStep find_x_new(const RateLocation& loc, int k_max = default_k_max,
                             double tolerance = default_beta_tolerance);

   // Partition index on a grid refined by (k + 1): the boundary lies
   // `offset / subdivisions` of a sigma step past loc_{R_s}.
   struct Location
   {
       int base = 0;
       int offset = 0;
       int subdivisions = 1;

       // Boundary in units of sigma above the mean.
       double boundary() const { return 4.0 - base - double(offset) / subdivisions; }
   };

   Location compute_location(int standard_index);
   Location compute_location(int s, const FractionalStep& step, double delta_low, double delta_high);

   struct Inclusion
   {
       std::vector<std::uint32_t> blocks; // ascending ids
       bool fallback = false;             // nothing cleared the boundary; the largest block was kept
   };

   // Blocks with PL_i >= mu + boundary * sigma. A degenerate profile keeps
   // every block.
   Inclusion inclusion_map(const ContributionProfile& profile, double boundary);

   struct TruncationOptions
   {
       bool plane_aligned = false; // cut at the last complete bit plane only
       bool top_up = false;        // hand leftover floor bits back one per block
   };

   struct TruncationPlan
   {
       std::vector<std::uint32_t> included;
       std::vector<std::uint64_t> points; // n_i for every block, 0 when excluded
       std::uint64_t rate_bits = 0;       // sum of n_i
       std::uint64_t budget_bits = 0;     // R_max
   };

   TruncationPlan truncation_points(const Inclusion& inclusion, const StreamHeader& header, std::uint64_t budget_bits,
                                    const TruncationOptions& options = {});

   struct TranscodeOptions
   {
       int k_max = default_k_max;
       double tolerance = default_beta_tolerance;
       TruncationOptions truncation;
   };

   // Every intermediate of one transcode, for reporting.
   struct TranscodeTrace
   {
       ContributionProfile profile;
       RateLocation location;
       std::optional<FractionalStep> step;
       std::optional<Location> partition;
       double boundary = 0.0; // sigma units; -inf keeps everything
       Inclusion inclusion;
       TruncationPlan plan;
   };

   TranscodeTrace plan_transcode(const StreamHeader& header, double target_bpp, const TranscodeOptions& options = {});

   std::vector<std::uint8_t> transcode(std::span<const std::uint8_t> stream, double target_bpp,
                                      const TranscodeOptions& options = {}, TranscodeTrace* trace = nullptr);

}

#endif
