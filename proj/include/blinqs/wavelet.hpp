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

#ifndef BLINQS_WAVELET_HPP
#define BLINQS_WAVELET_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "blinqs/grid.hpp"
#include "blinqs/image.hpp"

namespace blinqs
{

   enum class BandKind : std::uint8_t
   {
       LL = 0,
       HL = 1, // high-pass horizontally
       LH = 2, // high-pass vertically
       HH = 3
   };

   const char* band_name(BandKind kind);

   // Adds `offset` (-127 or +127) to every sample.
   RealGrid level_shift(const Image& img, int offset);

   // Adds `offset`, rounds half away from zero and clamps to [0, 255].
   Image level_shift(const RealGrid& grid, int offset);

   // Biorthogonal 4.4 (CDF 9/7) analysis/synthesis of one line, computed
   // with the lifting factorisation and whole-sample symmetric extension.
   // `line` is transformed in place into [low | high] with ceil(n/2) low
   // samples. `scratch` must hold at least line.size() values.
   void analyze_line(std::span<double> line, std::span<double> scratch);
   void synthesize_line(std::span<double> line, std::span<double> scratch);

   // One 2-D decomposition level applied to the top-left rows x cols
   // region of `data`, leaving the LL/HL/LH/HH quadrants in Mallat layout.
   void analyze_2d(RealGrid& data, std::size_t rows, std::size_t cols, Exec exec = Exec::parallel);
   void synthesize_2d(RealGrid& data, std::size_t rows, std::size_t cols, Exec exec = Exec::parallel);

   struct BandGeometry
   {
       BandKind kind;
       int level; // 1 = finest
       std::size_t row0;
       std::size_t col0;
       std::size_t rows;
       std::size_t cols;

       bool operator==(const BandGeometry&) const = default;
   };

   // Bands of a `levels`-deep Mallat decomposition in canonical order:
   // LL_levels, then HL, LH, HH for level = levels .. 1.
   std::vector<BandGeometry> band_layout(std::size_t rows, std::size_t cols, int levels);

   struct Subband
   {
       BandGeometry geometry;
       RealGrid coeffs;
   };

   class SubbandPyramid
   {
   public:
       SubbandPyramid() = default;

       // All-zero pyramid with the given shape.
       SubbandPyramid(std::size_t rows, std::size_t cols, int levels);

       std::size_t rows() const { return _rows; }
       std::size_t cols() const { return _cols; }
       int levels() const { return _levels; }

       std::vector<Subband>& bands() { return _bands; }
       const std::vector<Subband>& bands() const { return _bands; }

       Subband& band(BandKind kind, int level);
       const Subband& band(BandKind kind, int level) const;

   private:
       std::size_t _rows = 0;
       std::size_t _cols = 0;
       int _levels = 0;
       std::vector<Subband> _bands;
   };

   SubbandPyramid forward_dwt(const RealGrid& grid, int levels, Exec exec = Exec::parallel);
   RealGrid inverse_dwt(const SubbandPyramid& pyr, Exec exec = Exec::parallel);

   struct BlockGeometry
   {
       std::uint32_t id;
       std::size_t band; // index into band_layout()
       BandKind kind;
       int level;
       std::size_t row0; // within the band
       std::size_t col0;
       std::size_t rows;
       std::size_t cols;

       bool operator==(const BlockGeometry&) const = default;
   };

   // Code-block tiling of every band in canonical order, row-major within a
   // band. Edge blocks are smaller than cb_size; nothing is padded.
   std::vector<BlockGeometry> block_layout(std::size_t rows, std::size_t cols, int levels, int cb_size);

   struct CodeBlock
   {
       BlockGeometry geometry;
       RealGrid coeffs;
   };

   struct CodeBlockGrid
   {
       int cb_size = 0;
       std::vector<CodeBlock> blocks;

       std::size_t count() const { return blocks.size(); }
   };

   CodeBlockGrid partition_codeblocks(const SubbandPyramid& pyr, int cb_size);

   // Writes a block's coefficients back into its band.
   void place_codeblock(SubbandPyramid& pyr, const BlockGeometry& geom, const RealGrid& coeffs);

   enum class Direction
   {
       forward,
       inverse
   };

   inline constexpr std::size_t min_secondary_side = 8;

   struct SecondaryResult
   {
       RealGrid coeffs;
       bool applied; // false when the block was too small and passed through
   };

   // Single-level 2-D transform inside one high-pass code-block.
   SecondaryResult block_secondary_dwt(const RealGrid& block, Direction dir);

   // Squared L2 norm of the image-domain synthesis of a unit coefficient in
   // the centre of the given band; maps band-domain squared error to image
   // squared error.
   double synthesis_gain(std::size_t rows, std::size_t cols, int levels, BandKind kind, int level);

}

#endif
