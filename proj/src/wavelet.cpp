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

#include "blinqs/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace blinqs
{

   namespace
   {
       // Lifting factorisation of the bior4.4 filter bank. The final scaling
       // reproduces the published analysis taps exactly, including the sign
       // of the high-pass filter.
       constexpr double PREDICT1 = -1.586134342059924;
       constexpr double UPDATE1 = -0.052980118572961;
       constexpr double PREDICT2 = 0.882911075530934;
       constexpr double UPDATE2 = 0.443506852043971;
       constexpr double SCALE = 1.1496043988602418;

       // x[i] for i in [-1, n] under whole-sample symmetric extension.
       inline double sym(std::span<const double> x, std::ptrdiff_t i)
       {
           const auto n = std::ptrdiff_t(x.size());
           if (i < 0)
               i = -i;
           if (i >= n)
               i = 2 * (n - 1) - i;
           return x[std::size_t(i)];
       }

       void lift(std::span<double> y, std::size_t parity, double c)
       {
           const auto n = y.size();
           // Reads only samples of the other parity, so in-place is safe.
           for (std::size_t i = parity; i < n; i += 2)
               y[i] += c * (sym(y, std::ptrdiff_t(i) - 1) + sym(y, std::ptrdiff_t(i) + 1));
       }

       std::size_t ceil_half(std::size_t n) { return (n + 1) / 2; }

       template <class Fn>
       void for_each_line(std::size_t count, std::size_t length, Exec exec, Fn&& fn)
       {
#pragma omp parallel if (exec == Exec::parallel)
           {
               std::vector<double> line(length), scratch(length);

#pragma omp for schedule(static)
               for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(count); ++i)
                   fn(std::size_t(i), std::span<double>(line), std::span<double>(scratch));
           }
       }
   }

   const char* band_name(BandKind kind)
   {
       switch (kind)
       {
       case BandKind::LL: return "LL";
       case BandKind::HL: return "HL";
       case BandKind::LH: return "LH";
       case BandKind::HH: return "HH";
       }

       return "?";
   }

   RealGrid level_shift(const Image& img, int offset)
   {
       if (offset != -127 && offset != 127)
           throw ArgumentError("level shift offset must be -127 or +127");

       RealGrid out(img.height, img.width);

       for (std::size_t i = 0; i < img.samples.size(); ++i)
           out[i] = double(img.samples[i]) + offset;

       return out;
   }

   Image level_shift(const RealGrid& grid, int offset)
   {
       if (offset != -127 && offset != 127)
           throw ArgumentError("level shift offset must be -127 or +127");

       Image out(std::uint32_t(grid.cols()), std::uint32_t(grid.rows()));

       for (std::size_t i = 0; i < grid.size(); ++i)
       {
           const double v = std::round(grid[i] + offset);
           out.samples[i] = std::uint8_t(std::clamp(v, 0.0, 255.0));
       }

       return out;
   }

   void analyze_line(std::span<double> line, std::span<double> scratch)
   {
       const auto n = line.size();

       if (n < 2)
           return;

       lift(line, 1, PREDICT1);
       lift(line, 0, UPDATE1);
       lift(line, 1, PREDICT2);
       lift(line, 0, UPDATE2);

       const auto nl = ceil_half(n);

       for (std::size_t i = 0; i < nl; ++i)
           scratch[i] = line[2 * i] * SCALE;

       for (std::size_t i = 0; 2 * i + 1 < n; ++i)
           scratch[nl + i] = -line[2 * i + 1] / SCALE;

       std::copy_n(scratch.begin(), n, line.begin());
   }

   void synthesize_line(std::span<double> line, std::span<double> scratch)
   {
       const auto n = line.size();

       if (n < 2)
           return;

       const auto nl = ceil_half(n);

       for (std::size_t i = 0; i < nl; ++i)
           scratch[2 * i] = line[i] / SCALE;

       for (std::size_t i = 0; 2 * i + 1 < n; ++i)
           scratch[2 * i + 1] = -line[nl + i] * SCALE;

       std::span<double> y = scratch.first(n);
       lift(y, 0, -UPDATE2);
       lift(y, 1, -PREDICT2);
       lift(y, 0, -UPDATE1);
       lift(y, 1, -PREDICT1);

       std::copy_n(y.begin(), n, line.begin());
   }

   void analyze_2d(RealGrid& data, std::size_t rows, std::size_t cols, Exec exec)
   {
       for_each_line(rows, cols, exec, [&](std::size_t r, std::span<double>, std::span<double> scratch) {
           std::span<double> row = data.row(r).first(cols);
           analyze_line(row, scratch);
       });

       for_each_line(cols, rows, exec, [&](std::size_t c, std::span<double> line, std::span<double> scratch) {
           for (std::size_t r = 0; r < rows; ++r)
               line[r] = data(r, c);

           analyze_line(line.first(rows), scratch);

           for (std::size_t r = 0; r < rows; ++r)
               data(r, c) = line[r];
       });
   }

   void synthesize_2d(RealGrid& data, std::size_t rows, std::size_t cols, Exec exec)
   {
       for_each_line(cols, rows, exec, [&](std::size_t c, std::span<double> line, std::span<double> scratch) {
           for (std::size_t r = 0; r < rows; ++r)
               line[r] = data(r, c);

           synthesize_line(line.first(rows), scratch);

           for (std::size_t r = 0; r < rows; ++r)
               data(r, c) = line[r];
       });

       for_each_line(rows, cols, exec, [&](std::size_t r, std::span<double>, std::span<double> scratch) {
           std::span<double> row = data.row(r).first(cols);
           synthesize_line(row, scratch);
       });
   }

   std::vector<BandGeometry> band_layout(std::size_t rows, std::size_t cols, int levels)
   {
       std::vector<BandGeometry> details;
       std::size_t r = rows, c = cols;

       for (int level = 1; level <= levels; ++level)
       {
           const auto rl = ceil_half(r), cl = ceil_half(c);
           // Pushed HH, LH, HL so that the final reversal yields HL, LH, HH.
           details.push_back({BandKind::HH, level, rl, cl, r - rl, c - cl});
           details.push_back({BandKind::LH, level, rl, 0, r - rl, cl});
           details.push_back({BandKind::HL, level, 0, cl, rl, c - cl});
           r = rl;
           c = cl;
       }

       std::vector<BandGeometry> out;
       out.reserve(details.size() + 1);
       out.push_back({BandKind::LL, levels, 0, 0, r, c});
       out.insert(out.end(), details.rbegin(), details.rend());
       return out;
   }

   SubbandPyramid::SubbandPyramid(std::size_t rows, std::size_t cols, int levels)
       : _rows(rows), _cols(cols), _levels(levels)
   {
       for (const auto& g : band_layout(rows, cols, levels))
           _bands.push_back({g, RealGrid(g.rows, g.cols)});
   }

   Subband& SubbandPyramid::band(BandKind kind, int level)
   {
       for (auto& b : _bands)
       {
           if (b.geometry.kind == kind && b.geometry.level == level)
               return b;
       }

       throw ArgumentError(std::string("no band ") + band_name(kind) + std::to_string(level));
   }

   const Subband& SubbandPyramid::band(BandKind kind, int level) const
   {
       return const_cast<SubbandPyramid*>(this)->band(kind, level);
   }

   SubbandPyramid forward_dwt(const RealGrid& grid, int levels, Exec exec)
   {
       if (levels < 1)
           throw ArgumentError("DWT needs at least one level");

       const std::size_t min_side = std::size_t(1) << levels;

       if (grid.rows() < min_side || grid.cols() < min_side)
           throw ArgumentError("image of " + std::to_string(grid.cols()) + "x" + std::to_string(grid.rows()) +
                               " is too small for " + std::to_string(levels) + " DWT levels");

       RealGrid work = grid;
       std::size_t r = grid.rows(), c = grid.cols();

       for (int level = 1; level <= levels; ++level)
       {
           analyze_2d(work, r, c, exec);
           r = ceil_half(r);
           c = ceil_half(c);
       }

       SubbandPyramid pyr(grid.rows(), grid.cols(), levels);

       for (auto& band : pyr.bands())
       {
           const auto& g = band.geometry;

           for (std::size_t i = 0; i < g.rows; ++i)
               for (std::size_t j = 0; j < g.cols; ++j)
                   band.coeffs(i, j) = work(g.row0 + i, g.col0 + j);
       }

       return pyr;
   }

   RealGrid inverse_dwt(const SubbandPyramid& pyr, Exec exec)
   {
       const auto layout = band_layout(pyr.rows(), pyr.cols(), pyr.levels());

       if (layout.size() != pyr.bands().size())
           throw ArgumentError("pyramid band count does not match its shape");

       RealGrid work(pyr.rows(), pyr.cols());

       for (std::size_t b = 0; b < layout.size(); ++b)
       {
           const auto& g = layout[b];
           const auto& coeffs = pyr.bands()[b].coeffs;

           if (pyr.bands()[b].geometry != g || coeffs.rows() != g.rows || coeffs.cols() != g.cols)
               throw ArgumentError("inconsistent band dimensions in pyramid");

           for (std::size_t i = 0; i < g.rows; ++i)
               for (std::size_t j = 0; j < g.cols; ++j)
                   work(g.row0 + i, g.col0 + j) = coeffs(i, j);
       }

       std::vector<std::pair<std::size_t, std::size_t>> dims;
       std::size_t r = pyr.rows(), c = pyr.cols();

       for (int level = 1; level <= pyr.levels(); ++level)
       {
           dims.emplace_back(r, c);
           r = ceil_half(r);
           c = ceil_half(c);
       }

       for (auto it = dims.rbegin(); it != dims.rend(); ++it)
           synthesize_2d(work, it->first, it->second, exec);

       return work;
   }

   std::vector<BlockGeometry> block_layout(std::size_t rows, std::size_t cols, int levels, int cb_size)
   {
       if (cb_size < 8 || (cb_size & (cb_size - 1)) != 0)
           throw ArgumentError("code-block size must be a power of two >= 8");

       const auto cb = std::size_t(cb_size);
       const auto bands = band_layout(rows, cols, levels);
       std::vector<BlockGeometry> out;
       std::uint32_t id = 0;

       for (std::size_t b = 0; b < bands.size(); ++b)
       {
           const auto& g = bands[b];

           for (std::size_t r0 = 0; r0 < g.rows; r0 += cb)
               for (std::size_t c0 = 0; c0 < g.cols; c0 += cb)
                   out.push_back({id++, b, g.kind, g.level, r0, c0, std::min(cb, g.rows - r0), std::min(cb, g.cols - c0)});
       }

       return out;
   }

   CodeBlockGrid partition_codeblocks(const SubbandPyramid& pyr, int cb_size)
   {
       CodeBlockGrid grid;
       grid.cb_size = cb_size;

       for (const auto& geom : block_layout(pyr.rows(), pyr.cols(), pyr.levels(), cb_size))
       {
           const auto& band = pyr.bands()[geom.band].coeffs;
           RealGrid coeffs(geom.rows, geom.cols);

           for (std::size_t i = 0; i < geom.rows; ++i)
               for (std::size_t j = 0; j < geom.cols; ++j)
                   coeffs(i, j) = band(geom.row0 + i, geom.col0 + j);

           grid.blocks.push_back({geom, std::move(coeffs)});
       }

       return grid;
   }

   void place_codeblock(SubbandPyramid& pyr, const BlockGeometry& geom, const RealGrid& coeffs)
   {
       auto& band = pyr.bands().at(geom.band).coeffs;

       if (coeffs.rows() != geom.rows || coeffs.cols() != geom.cols ||
           geom.row0 + geom.rows > band.rows() || geom.col0 + geom.cols > band.cols())
           throw ArgumentError("code-block does not fit its band");

       for (std::size_t i = 0; i < geom.rows; ++i)
           for (std::size_t j = 0; j < geom.cols; ++j)
               band(geom.row0 + i, geom.col0 + j) = coeffs(i, j);
   }

   SecondaryResult block_secondary_dwt(const RealGrid& block, Direction dir)
   {
       if (block.rows() < min_secondary_side || block.cols() < min_secondary_side)
           return {block, false};

       RealGrid out = block;

       if (dir == Direction::forward)
           analyze_2d(out, out.rows(), out.cols(), Exec::serial);
       else
           synthesize_2d(out, out.rows(), out.cols(), Exec::serial);

       return {std::move(out), true};
   }

   double synthesis_gain(std::size_t rows, std::size_t cols, int levels, BandKind kind, int level)
   {
       SubbandPyramid pyr(rows, cols, levels);
       auto& band = pyr.band(kind, level).coeffs;
       band(band.rows() / 2, band.cols() / 2) = 1.0;

       const RealGrid img = inverse_dwt(pyr, Exec::serial);
       double energy = 0.0;

       for (double v : img.values())
           energy += v * v;

       return energy;
   }

}
